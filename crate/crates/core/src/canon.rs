//! Canonical forms by individualization and refinement.
//!
//! The search tree starts from the colour-refined unit partition. A node
//! individualizes each vertex of its first non-singleton cell in turn and
//! refines again; every discrete leaf orders the vertices, and that order
//! gives an upper-triangle bit string. The canonical form is the smallest
//! string over all leaves. Both refinement and target-cell choice depend
//! only on cell positions and neighbor counts, so relabeling the input
//! relabels the whole tree and the minimum is unchanged.
//!
//! Leaves that reproduce the first or best string reveal automorphisms.
//! Siblings in the same orbit of the automorphisms fixing the current path
//! span isomorphic subtrees and are skipped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;
use crate::partition::refine;
use crate::spectral::MatrixKind;

/// Largest order whose upper triangle fits in the 128-bit code.
pub const MAX_CANON_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical forms are limited to order {MAX_CANON_ORDER}, got {0}")]
    OrderTooLarge(usize),
}

/// Upper triangle of the canonically relabeled adjacency matrix in graph6
/// bit order, first bit most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub bits: u128,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let total = n * n.saturating_sub(1) / 2;
        let mut rows = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (total - 1 - k) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph::from_rows_unchecked(rows)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(&self.to_graph())
    }
}

fn leaf_code(g: &Graph, order: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..order.len() {
        let row = g.rows()[order[j]];
        for &vi in &order[..j] {
            code = code << 1 | (row >> vi & 1) as u128;
        }
    }
    code
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(u128, Vec<usize>)>,
    best: Option<(u128, Vec<usize>)>,
    // each automorphism as a vertex map
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn record_auto(&mut self, from: &[usize], to: &[usize]) {
        let mut map = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            map[a] = b;
        }
        self.autos.push(map);
    }

    /// Whether `v` shares an orbit with a tried vertex under the
    /// automorphisms fixing `path` pointwise.
    fn same_orbit(&self, path: &[usize], v: usize, tried: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for map in &self.autos {
            if path.iter().all(|&p| map[p] == p) {
                for (x, &y) in map.iter().enumerate() {
                    let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        let rv = root(&mut parent, v);
        tried.iter().any(|&t| root(&mut parent, t) == rv)
    }

    fn leaf(&mut self, cells: &[VertexSet]) {
        let order: Vec<usize> = cells.iter().map(|c| c.first().expect("nonempty")).collect();
        let code = leaf_code(self.g, &order);
        let Some((first_code, first_order)) = &self.first else {
            self.first = Some((code, order.clone()));
            self.best = Some((code, order));
            return;
        };
        if code == *first_code {
            let from = first_order.clone();
            self.record_auto(&from, &order);
            return;
        }
        let (best_code, best_order) = self.best.as_ref().expect("set with first");
        if code == *best_code {
            let from = best_order.clone();
            self.record_auto(&from, &order);
        } else if code < *best_code {
            self.best = Some((code, order));
        }
    }

    fn descend(&mut self, cells: Vec<VertexSet>, path: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut tried = Vec::new();
        for v in cell {
            if !tried.is_empty() && self.same_orbit(path, v, &tried) {
                continue;
            }
            let mut rest = cell;
            rest.remove(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(VertexSet::singleton(v));
            child.push(rest);
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, MatrixKind::Adjacency, &mut child);
            path.push(v);
            self.descend(child, path);
            path.pop();
            tried.push(v);
        }
    }
}

/// Canonical labeling as an old-to-new vertex map: `g.permute(&labeling)`
/// is the canonical graph.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, CanonError> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(CanonError::OrderTooLarge(n));
    }
    let mut cells = vec![g.vertices()];
    refine(g, MatrixKind::Adjacency, &mut cells);
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    search.descend(cells, &mut Vec::new());
    let (_, order) = search.best.expect("the tree has at least one leaf");
    let mut labeling = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        labeling[old] = new;
    }
    Ok(labeling)
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    let labeling = canonical_labeling(g)?;
    let mut order = vec![0; g.order()];
    for (old, &new) in labeling.iter().enumerate() {
        order[new] = old;
    }
    Ok(CanonicalForm {
        n: g.order() as u8,
        bits: leaf_code(g, &order),
    })
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, CanonError> {
    Ok(g.order() == h.order() && canonical_form(g)? == canonical_form(h)?)
}
