//! Simple undirected graphs on at most 64 vertices.
//!
//! Every neighbor set is a single `u64`, so set algebra on neighborhoods is a
//! handful of word operations. Graphs are immutable once built; the
//! composition operators return new graphs.
//!
//! Vertex layout of the named families is fixed:
//!
//! * [`Graph::h_n`] and [`Graph::matching_join`] put the matching side first
//!   (pairs `(0,1)`, `(2,3)`, ..., then the unmatched vertices) and the
//!   independent side last.
//! * [`Graph::g_ab`] puts the center `u_0` at 0, then the leaves
//!   `u_1..u_a`, then `v_1..v_b`, then `w_1..w_b`.
//! * [`Graph::g_abcd`] puts the apex `u` at 0, the tree `G(a,b)` at
//!   `1..=a+2b+1` (same internal order as above), then the `c` matched
//!   pairs `(x_i, y_i)` of the second neighborhood, then the `d` isolated
//!   second-neighborhood vertices `z_j`.

use std::fmt;

use thiserror::Error;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} is outside 1..=64")]
    OrderOutOfRange(usize),
    #[error("{family} needs at least {min} vertices, got {n}")]
    TooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("vertex {v} is out of range for a graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("{0} and {1} are not adjacent")]
    MissingEdge(usize, usize),
    #[error("invalid permutation")]
    InvalidPermutation,
}

/// A set of vertex indices packed into one word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(GraphError::OrderOutOfRange(n))
    }
}

impl Graph {
    /// The edgeless graph `nK_1`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        check_order(n)?;
        let full = VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                let w = (row & !full).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { v: w, n });
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for w in VertexSet(row) {
                if rows[w] >> v & 1 == 0 {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows must already be symmetric, loopless and confined to `0..n`.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        let full = VertexSet::full(n).0;
        Ok(Graph {
            n,
            adj: (0..n).map(|v| full & !(1u64 << v)).collect(),
        })
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall {
                family: "cycle",
                min: 3,
                n,
            });
        }
        let mut g = Graph::path(n)?;
        g.set_edge(n - 1, 0);
        Ok(g)
    }

    /// `W_n = K_1 ∇ C_{n-1}` with the hub at vertex 0.
    pub fn wheel(n: usize) -> Result<Self, GraphError> {
        if n < 4 {
            return Err(GraphError::TooSmall {
                family: "wheel",
                min: 4,
                n,
            });
        }
        Graph::empty(1)?.join(&Graph::cycle(n - 1)?)
    }

    /// The star `K_{1,k}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        Graph::empty(1)?.join(&Graph::empty(leaves)?)
    }

    /// `G ∇ H`: `self` keeps its labels, `other` is shifted up by `self.order()`.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n).0;
        let right = VertexSet::full(g.n).0 & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        check_order(n)?;
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << shift));
        Ok(Graph { n, adj })
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        Graph {
            n: self.n,
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(v, &row)| !row & full & !(1u64 << v))
                .collect(),
        }
    }

    /// `kG`, the disjoint union of `k ≥ 1` copies.
    pub fn k_copies(&self, k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::OrderOutOfRange(0));
        }
        let mut g = self.clone();
        for _ in 1..k {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// `(aK_2 ∪ bK_1) ∇ cK_1`. Either side may be empty but not both.
    pub fn matching_join(pairs: usize, singles: usize, independent: usize) -> Result<Graph, GraphError> {
        let left_n = 2 * pairs + singles;
        let n = left_n + independent;
        check_order(n)?;
        let mut g = Graph::empty(n)?;
        for i in 0..pairs {
            g.set_edge(2 * i, 2 * i + 1);
        }
        for u in 0..left_n {
            for v in left_n..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// The extremal family `H_n`, defined by cases on `n mod 4`.
    pub fn h_n(n: usize) -> Result<Graph, GraphError> {
        if n < 4 {
            return Err(GraphError::TooSmall {
                family: "H_n",
                min: 4,
                n,
            });
        }
        check_order(n)?;
        match n % 4 {
            1 => Graph::matching_join((n - 1) / 4, 0, (n + 1) / 2),
            3 => Graph::matching_join((n + 1) / 4, 0, (n - 1) / 2),
            0 => Graph::matching_join(n / 4, 0, n / 2),
            _ => Graph::matching_join((n - 2) / 4, 1, n / 2),
        }
    }

    /// `K_2 ∇ (n-2)K_1`, the signless Laplacian extremal graph.
    pub fn k2_join_independent(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall {
                family: "K_2 join (n-2)K_1",
                min: 3,
                n,
            });
        }
        Graph::matching_join(1, 0, n - 2)
    }

    /// The complement of `C_7`.
    pub fn f7() -> Graph {
        Graph::cycle(7).expect("7 >= 3").complement()
    }

    /// The tree `G(a, b)`: a center `u_0` with `a` leaves and `b` pendant
    /// paths of length two (`u_0 - v_i - w_i`).
    ///
    /// Only a drawing exists for this graph; its shape is read off the rows
    /// of the six-cell quotient matrix used for it, where `u_0` sees the
    /// `a` leaves and the `v` cell but not the `w` cell, each `v_i` sees one
    /// `w_i`, and the leaves see nothing inside the tree except `u_0`.
    pub fn g_ab(a: usize, b: usize) -> Result<Graph, GraphError> {
        let n = a + 2 * b + 1;
        let mut g = Graph::empty(n)?;
        for leaf in 1..=a {
            g.set_edge(0, leaf);
        }
        for i in 0..b {
            let v = a + 1 + i;
            let w = a + 1 + b + i;
            g.set_edge(0, v);
            g.set_edge(v, w);
        }
        Ok(g)
    }

    /// `G(a, b, c, d)`: apex `u` joined to all of `G(a, b)`, second
    /// neighborhood `cK_2 ∪ dK_1`, and every second-neighborhood vertex
    /// adjacent to every vertex of `N(u)` except the center `u_0`.
    pub fn g_abcd(a: usize, b: usize, c: usize, d: usize) -> Result<Graph, GraphError> {
        let tree = Graph::g_ab(a, b)?;
        let second = match 2 * c + d {
            0 => None,
            _ => Some(Graph::matching_join(c, d, 0)?),
        };
        let mut g = Graph::empty(1)?.join(&tree)?;
        if let Some(second) = second {
            let base = g.n;
            g = g.disjoint_union(&second)?;
            for x in base..g.n {
                for y in 2..base {
                    g.set_edge(x, y);
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Neighbor set of `v`; panics when `v` is out of range.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        if s.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                v: s.difference(self.vertices()).first().unwrap_or(64),
                n: self.n,
            })
        }
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v))
    }

    /// `N_k(v)` for every `k`, by breadth-first search. Entry `k` holds the
    /// vertices at distance exactly `k`; unreachable vertices are omitted.
    pub fn distance_layers(&self, v: usize) -> Result<Vec<VertexSet>, GraphError> {
        self.check_vertex(v)?;
        let mut layers = vec![VertexSet::singleton(v)];
        let mut seen = VertexSet::singleton(v);
        loop {
            let frontier = *layers.last().expect("nonempty");
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, w| acc.union(self.neighbors(w)))
                .difference(seen);
            if next.is_empty() {
                return Ok(layers);
            }
            seen = seen.union(next);
            layers.push(next);
        }
    }

    /// Vertices at distance exactly two from `v`.
    pub fn second_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        let n1 = self.neighbors(v);
        let reach = n1
            .iter()
            .fold(VertexSet::EMPTY, |acc, w| acc.union(self.neighbors(w)));
        Ok(reach.difference(n1).difference(VertexSet::singleton(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                VertexSet(self.adj[u] >> u >> 1 << u << 1)
                    .iter()
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Number of edges inside `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & s.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// `e(S, T)` for disjoint `S` and `T`.
    pub fn edges_between(&self, s: VertexSet, t: VertexSet) -> Result<usize, GraphError> {
        self.check_set(s)?;
        self.check_set(t)?;
        if !s.is_disjoint(t) {
            return Err(GraphError::OverlappingSets);
        }
        Ok(s.iter().map(|v| (self.adj[v] & t.0).count_ones() as usize).sum())
    }

    /// `G[S]`, relabeled so the vertices of `S` keep their relative order.
    pub fn induced(&self, s: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(GraphError::OrderOutOfRange(0));
        }
        let vs: Vec<usize> = s.iter().collect();
        let rows = vs
            .iter()
            .map(|&v| {
                vs.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.adj[v] >> w & 1 == 1)
                    .fold(0u64, |acc, (j, _)| acc | 1u64 << j)
            })
            .collect();
        Ok(Graph::from_rows_unchecked(rows))
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1u64 << v);
        g.adj[v] &= !(1u64 << u);
        Ok(g)
    }

    /// `G - v`; higher vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        self.induced(self.vertices().difference(VertexSet::singleton(v)))
    }

    /// Adds a new vertex `n` adjacent to `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(nbrs)?;
        check_order(self.n + 1)?;
        let x = self.n;
        let mut adj = self.adj.clone();
        for w in nbrs {
            adj[w] |= 1u64 << x;
        }
        adj.push(nbrs.0);
        Ok(Graph { n: x + 1, adj })
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidPermutation);
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(GraphError::InvalidPermutation);
            }
            seen |= 1u64 << p;
        }
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = VertexSet(self.adj[v])
                .iter()
                .fold(0u64, |acc, w| acc | 1u64 << perm[w]);
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Connected components of `G[S]`, each as a vertex set, ordered by
    /// smallest element.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = frontier
                    .iter()
                    .fold(0u64, |acc, v| acc | self.adj[v])
                    & s.0
                    & !comp.0;
                comp = comp.union(VertexSet(next));
                frontier = VertexSet(next);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.vertices()).len() == 1
    }

    /// Whether `G[S]` is acyclic: a forest on `|S|` vertices with `ω`
    /// components has exactly `|S| - ω` edges.
    pub fn induces_forest(&self, s: VertexSet) -> bool {
        self.edges_within(s) + self.components_within(s).len() == s.len()
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_tree(g: &Graph) -> bool {
        g.is_connected() && g.edge_count() + 1 == g.order()
    }

    fn acyclic_brute_force(g: &Graph) -> bool {
        // a graph is a forest iff removing any single edge disconnects its endpoints
        g.edges().into_iter().all(|(u, v)| {
            let h = g.delete_edge(u, v).unwrap();
            h.components()
                .iter()
                .all(|c| !(c.contains(u) && c.contains(v)))
        })
    }

    #[test]
    fn standard_families() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(c7.edge_count(), 7);
        assert!(c7.degrees().iter().all(|&d| d == 2));
        assert_eq!(Graph::path(2).unwrap().edges(), vec![(0, 1)]);
        assert_eq!(Graph::path(1).unwrap().edge_count(), 0);
    }

    #[test]
    fn order_errors() {
        assert_eq!(Graph::empty(0), Err(GraphError::OrderOutOfRange(0)));
        assert_eq!(Graph::complete(65), Err(GraphError::OrderOutOfRange(65)));
        assert!(Graph::complete(64).is_ok());
        assert!(matches!(Graph::cycle(2), Err(GraphError::TooSmall { .. })));
        assert!(matches!(Graph::wheel(3), Err(GraphError::TooSmall { .. })));
        assert!(matches!(Graph::h_n(3), Err(GraphError::TooSmall { .. })));
        let big = Graph::complete(40).unwrap();
        assert_eq!(big.join(&big), Err(GraphError::OrderOutOfRange(80)));
    }

    #[test]
    fn wheels() {
        let w4 = Graph::wheel(4).unwrap();
        assert_eq!(w4, Graph::complete(4).unwrap());
        let w5 = Graph::wheel(5).unwrap();
        assert_eq!(w5.degree(0), 4);
        assert!((1..5).all(|v| w5.degree(v) == 3));
        assert_eq!(Graph::wheel(6).unwrap().edge_count(), 10);
    }

    #[test]
    fn composition_operators() {
        let g = Graph::complete(2).unwrap().join(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 7));
        let f = Graph::f7();
        assert_eq!(f.order(), 7);
        assert!(f.degrees().iter().all(|&d| d == 4));
        let two_k2 = Graph::complete(2).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(two_k2.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(Graph::complete(2).unwrap().k_copies(2).unwrap(), two_k2);
    }

    #[test]
    fn h_n_cases() {
        let h5 = Graph::h_n(5).unwrap();
        assert_eq!((h5.order(), h5.edge_count()), (5, 7));
        assert_eq!(h5.degrees(), vec![4, 4, 2, 2, 2]);
        let h7 = Graph::h_n(7).unwrap();
        assert_eq!((h7.order(), h7.edge_count()), (7, 14));
        let h6 = Graph::h_n(6).unwrap();
        // (K_2 ∪ K_1) ∇ 3K_1: vertex 2 is the unmatched one on the left
        assert_eq!(h6.neighbors(2), VertexSet::from_vertices([3, 4, 5]));
        assert_eq!(h6.neighbors(0), VertexSet::from_vertices([1, 3, 4, 5]));
        for n in 4..=64 {
            assert_eq!(Graph::h_n(n).unwrap().order(), n);
        }
    }

    #[test]
    fn g_ab_shapes() {
        assert_eq!(Graph::g_ab(3, 0).unwrap(), Graph::star(3).unwrap());
        let spider = Graph::g_ab(0, 2).unwrap();
        assert_eq!((spider.order(), spider.edge_count()), (5, 4));
        assert!(spider.is_connected() && acyclic_brute_force(&spider));
        assert_eq!(Graph::g_ab(2, 1).unwrap().degree(0), 3);
        for a in 0..6 {
            for b in 0..6 {
                let g = Graph::g_ab(a, b).unwrap();
                assert!(is_tree(&g), "G({a},{b})");
                assert!(acyclic_brute_force(&g));
            }
        }
    }

    #[test]
    fn g_abcd_shapes() {
        let g = Graph::g_abcd(2, 1, 0, 0).unwrap();
        let expected = Graph::empty(1).unwrap().join(&Graph::g_ab(2, 1).unwrap()).unwrap();
        assert_eq!(g, expected);
        let g = Graph::g_abcd(3, 1, 0, 2).unwrap();
        // d_u = a + 2b + 1 = 6; z-vertices see N(u) minus u_0
        assert_eq!(g.degree(0), 6);
        for z in [7, 8] {
            assert_eq!(g.degree(z), 5);
            assert!(!g.has_edge(z, 1));
            assert!(!g.has_edge(z, 0));
        }
        for (a, b, c, d) in [(1, 2, 3, 4), (0, 0, 0, 0), (4, 0, 1, 0)] {
            assert_eq!(Graph::g_abcd(a, b, c, d).unwrap().order(), a + 2 * b + 2 * c + d + 2);
        }
        let g = Graph::g_abcd(1, 1, 1, 0).unwrap();
        // x_1 y_1 matched in the second neighborhood
        assert!(g.has_edge(5, 6));
    }

    #[test]
    fn neighborhoods() {
        let star = Graph::star(3).unwrap();
        assert!(star.second_neighborhood(0).unwrap().is_empty());
        assert_eq!(star.second_neighborhood(1).unwrap(), VertexSet::from_vertices([2, 3]));
        let h5 = Graph::h_n(5).unwrap();
        for v in 2..5 {
            let expected = VertexSet::from_vertices([2, 3, 4]).difference(VertexSet::singleton(v));
            assert_eq!(h5.second_neighborhood(v).unwrap(), expected);
            assert_eq!(h5.distance_layers(v).unwrap()[2], expected);
        }
        let left = VertexSet::from_vertices([0, 1]);
        let right = VertexSet::from_vertices([2, 3, 4]);
        assert_eq!(h5.edges_between(left, right).unwrap(), 6);
        assert_eq!(h5.edges_between(left, left), Err(GraphError::OverlappingSets));
        assert!(h5.neighborhood(5).is_err());
        assert!(h5.edges_between(VertexSet::singleton(9), right).is_err());
    }

    #[test]
    fn subgraph_operations() {
        let c5 = Graph::cycle(5).unwrap();
        let p = c5.delete_edge(4, 0).unwrap();
        assert_eq!(p, Graph::path(5).unwrap());
        assert_eq!(c5.delete_edge(0, 2), Err(GraphError::MissingEdge(0, 2)));
        assert_eq!(c5.delete_vertex(0).unwrap(), Graph::path(4).unwrap());
        assert_eq!(
            c5.induced(VertexSet::from_vertices([0, 1, 2])).unwrap(),
            Graph::path(3).unwrap()
        );
        assert!(!Graph::empty(3).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        let g = Graph::path(3).unwrap().add_vertex(VertexSet::from_vertices([0, 2])).unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
    }

    #[test]
    fn from_rows_validation() {
        assert_eq!(Graph::from_rows(vec![0b10, 0b00]), Err(GraphError::Asymmetric(0, 1)));
        assert_eq!(Graph::from_rows(vec![0b01]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(
            Graph::from_rows(vec![0b100, 0]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert_eq!(Graph::from_rows(vec![0b10, 0b01]).unwrap(), Graph::complete(2).unwrap());
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn permute_rejects_non_permutations() {
        let g = Graph::path(3).unwrap();
        assert_eq!(g.permute(&[0, 0, 1]), Err(GraphError::InvalidPermutation));
        assert_eq!(g.permute(&[0, 1]), Err(GraphError::InvalidPermutation));
        let h = g.permute(&[1, 0, 2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
    }
}
