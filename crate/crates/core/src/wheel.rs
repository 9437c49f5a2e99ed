//! Wheel detection.
//!
//! A wheel subgraph is a hub together with a cycle inside the hub's open
//! neighborhood, so a graph is wheel-free exactly when every open
//! neighborhood induces a forest. [`brute_force_contains_wheel`] checks the
//! same property straight from the definition and is kept independent of
//! the neighborhood test.

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WheelWitness {
    pub hub: usize,
    pub rim: Vec<usize>,
}

impl WheelWitness {
    /// Checks the witness against `g`: rim of length at least three with
    /// distinct vertices, consecutive rim vertices adjacent (cyclically), and
    /// the hub adjacent to every rim vertex.
    pub fn validate(&self, g: &Graph) -> bool {
        let k = self.rim.len();
        if k < 3 || self.hub >= g.order() {
            return false;
        }
        let set = VertexSet::from_vertices(self.rim.iter().copied());
        if set.len() != k || set.contains(self.hub) || self.rim.iter().any(|&v| v >= g.order()) {
            return false;
        }
        (0..k).all(|i| g.has_edge(self.rim[i], self.rim[(i + 1) % k]))
            && self.rim.iter().all(|&v| g.has_edge(self.hub, v))
    }
}

pub fn is_wheel_free(g: &Graph) -> bool {
    (0..g.order()).all(|v| g.induces_forest(g.neighbors(v)))
}

/// A wheel in `g`, or `None` when `g` is wheel-free.
///
/// Picks the lowest-index hub whose neighborhood has a cycle, then a
/// shortest cycle there, then the lexicographically smallest rim among those
/// (rims start at their smallest vertex).
pub fn find_wheel_witness(g: &Graph) -> Option<WheelWitness> {
    (0..g.order()).find_map(|hub| {
        let nbhd = g.neighbors(hub);
        if g.induces_forest(nbhd) {
            return None;
        }
        let girth = girth_within(g, nbhd)?;
        let rim = smallest_cycle_of_length(g, nbhd, girth)?;
        Some(WheelWitness { hub, rim })
    })
}

/// Length of a shortest cycle of `G[S]`, by breadth-first search from every
/// vertex.
fn girth_within(g: &Graph, s: VertexSet) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in s {
        let mut dist = [usize::MAX; 64];
        let mut parent = [usize::MAX; 64];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x).intersection(s) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Lexicographically smallest cycle of exactly `len` vertices inside `s`,
/// listed from its smallest vertex.
fn smallest_cycle_of_length(g: &Graph, s: VertexSet, len: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, allowed: VertexSet, len: usize, path: &mut Vec<usize>, used: VertexSet) -> bool {
        let start = path[0];
        let last = *path.last().expect("nonempty path");
        if path.len() == len {
            return g.has_edge(last, start);
        }
        for next in g.neighbors(last).intersection(allowed).difference(used) {
            path.push(next);
            if extend(g, allowed, len, path, used.union(VertexSet::singleton(next))) {
                return true;
            }
            path.pop();
        }
        false
    }

    for start in s {
        // vertices above `start` only, so `start` is the rim minimum
        let allowed = VertexSet(s.bits() & !((2u64 << start) - 1));
        let mut path = vec![start];
        if extend(g, allowed, len, &mut path, VertexSet::singleton(start)) {
            return Some(path);
        }
    }
    None
}

/// Enumerates every cycle of `g` and reports whether some vertex off the
/// cycle is adjacent to all of it. Exponential; meant for small orders.
pub fn brute_force_contains_wheel(g: &Graph) -> bool {
    fn search(g: &Graph, path: &mut Vec<usize>, on_path: VertexSet) -> bool {
        let start = path[0];
        let last = *path.last().expect("nonempty path");
        if path.len() >= 3 && g.has_edge(last, start) {
            let common = path
                .iter()
                .fold(g.vertices().bits(), |acc, &v| acc & g.neighbors(v).bits());
            if common & !on_path.bits() != 0 {
                return true;
            }
        }
        for next in g.neighbors(last) {
            if next > start && !on_path.contains(next) {
                path.push(next);
                let found = search(g, path, on_path.union(VertexSet::singleton(next)));
                path.pop();
                if found {
                    return true;
                }
            }
        }
        false
    }

    (0..g.order()).any(|start| search(g, &mut vec![start], VertexSet::singleton(start)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact2Kind {
    /// `G[N(u) ∩ N(v)]` contains a path on three vertices.
    P3,
    /// `uv` is an edge and `G[N(u) ∩ N(v)]` contains an edge.
    K2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact2Violation {
    pub u: usize,
    pub v: usize,
    pub kind: Fact2Kind,
}

/// Common-neighborhood conditions that every wheel-free graph satisfies:
/// for distinct `u, v` the common neighborhood induces no `P_3`, and when
/// `uv` is an edge it induces no edge at all.
pub fn check_fact2(g: &Graph) -> Vec<Fact2Violation> {
    let mut out = Vec::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let common = g.neighbors(u).intersection(g.neighbors(v));
            let inner_degree = |w: usize| g.neighbors(w).intersection(common).len();
            if common.iter().any(|w| inner_degree(w) >= 2) {
                out.push(Fact2Violation { u, v, kind: Fact2Kind::P3 });
            }
            if g.has_edge(u, v) && g.edges_within(common) > 0 {
                out.push(Fact2Violation { u, v, kind: Fact2Kind::K2 });
            }
        }
    }
    out
}

/// For a wheel-free parent, decides whether adding a vertex adjacent to
/// `nbrs` keeps the graph wheel-free. `components[u]` must list the
/// components of `G[N(u)]`.
pub(crate) fn extension_stays_wheel_free(g: &Graph, components: &[Vec<u64>], nbrs: u64) -> bool {
    if !g.induces_forest(VertexSet(nbrs)) {
        return false;
    }
    VertexSet(nbrs).iter().all(|u| {
        components[u]
            .iter()
            .all(|&comp| (comp & nbrs).count_ones() <= 1)
    })
}

pub(crate) fn neighborhood_components(g: &Graph) -> Vec<Vec<u64>> {
    (0..g.order())
        .map(|u| {
            g.components_within(g.neighbors(u))
                .into_iter()
                .map(|c| c.bits())
                .collect()
        })
        .collect()
}
