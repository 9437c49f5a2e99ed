//! Equitable partitions and their quotient matrices.
//!
//! A partition `X_1, .., X_k` of the vertex set is equitable for a matrix
//! `M` when every block `M[X_i, X_j]` has constant row sums `b_ij`. The
//! quotient `B = (b_ij)` is kept in exact rationals. Its eigenvalues are
//! eigenvalues of `M`; for a connected graph the largest ones coincide.
//!
//! Cells are ordered by their smallest vertex throughout, and every golden
//! quotient in the tests is stated under that order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::poly::{faddeev_leverrier, rat, Polynomial};
use crate::spectral::{jacobi_eigen, spectral_radius, MatrixKind, SpectralError, SymMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("partition cell {0} is empty")]
    EmptyCell(usize),
    #[error("vertex {0} appears in more than one cell")]
    Overlap(usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("cell {cell} mentions vertex {v} outside a graph of order {n}")]
    OutOfRange { cell: usize, v: usize, n: usize },
    #[error("partition is on {partition} vertices but the graph has {graph}")]
    OrderMismatch { partition: usize, graph: usize },
    #[error("partition is not equitable: block ({0}, {1}) has non-constant row sums")]
    NotEquitable(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Disjoint nonempty cells covering `{0, .., n-1}`, in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    cells: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, cells: Vec<VertexSet>) -> Result<Self, PartitionError> {
        let mut seen = VertexSet::EMPTY;
        for (i, &cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(PartitionError::EmptyCell(i));
            }
            if let Some(v) = cell.difference(VertexSet::full(n)).first() {
                return Err(PartitionError::OutOfRange { cell: i, v, n });
            }
            if let Some(v) = cell.intersection(seen).first() {
                return Err(PartitionError::Overlap(v));
            }
            seen = seen.union(cell);
        }
        if let Some(v) = VertexSet::full(n).difference(seen).first() {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(Partition { n, cells })
    }

    pub fn from_cells(n: usize, cells: &[&[usize]]) -> Result<Self, PartitionError> {
        Partition::new(
            n,
            cells
                .iter()
                .map(|c| VertexSet::from_vertices(c.iter().copied()))
                .collect(),
        )
    }

    /// The single-cell partition.
    pub fn unit(n: usize) -> Self {
        Partition {
            n,
            cells: vec![VertexSet::full(n)],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    /// Same cells, reordered by smallest vertex.
    pub fn sorted(mut self) -> Self {
        self.cells.sort_by_key(|c| c.first());
        self
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.n
    }

    fn check_graph(&self, g: &Graph) -> Result<(), PartitionError> {
        if self.n == g.order() {
            Ok(())
        } else {
            Err(PartitionError::OrderMismatch {
                partition: self.n,
                graph: g.order(),
            })
        }
    }
}

/// Row sum of the `(v, cell)` block of the chosen matrix.
pub(crate) fn block_weight(g: &Graph, kind: MatrixKind, v: usize, cell: VertexSet) -> usize {
    let a = g.neighbors(v).intersection(cell).len();
    match kind {
        MatrixKind::Adjacency => a,
        MatrixKind::SignlessLaplacian if cell.contains(v) => a + g.degree(v),
        MatrixKind::SignlessLaplacian => a,
    }
}

fn first_non_constant_block(g: &Graph, p: &Partition, kind: MatrixKind) -> Option<(usize, usize)> {
    for (i, &ci) in p.cells.iter().enumerate() {
        for (j, &cj) in p.cells.iter().enumerate() {
            let mut weights = ci.iter().map(|v| block_weight(g, kind, v, cj));
            let first = weights.next().expect("cells are nonempty");
            if weights.any(|w| w != first) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_equitable(g: &Graph, p: &Partition, kind: MatrixKind) -> Result<bool, PartitionError> {
    p.check_graph(g)?;
    Ok(first_non_constant_block(g, p, kind).is_none())
}

/// Refines an ordered list of cells until every block has constant row sums.
///
/// A cell is split by the weight its vertices send into a splitter cell;
/// the fragments replace it in place, ordered by increasing weight. Cells are
/// visited by position only, so relabeling the graph relabels the result.
pub(crate) fn refine(g: &Graph, kind: MatrixKind, cells: &mut Vec<VertexSet>) {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut i = 0;
            while i < cells.len() {
                let cell = cells[i];
                if cell.len() > 1 {
                    let mut keyed: Vec<(usize, usize)> = cell
                        .iter()
                        .map(|v| (block_weight(g, kind, v, splitter), v))
                        .collect();
                    keyed.sort_unstable();
                    if keyed[0].0 != keyed[keyed.len() - 1].0 {
                        let mut fragments: Vec<VertexSet> = Vec::new();
                        let mut last_key = usize::MAX;
                        for (key, v) in keyed {
                            if key != last_key {
                                fragments.push(VertexSet::EMPTY);
                                last_key = key;
                            }
                            fragments.last_mut().expect("pushed").insert(v);
                        }
                        let count = fragments.len();
                        cells.splice(i..=i, fragments);
                        changed = true;
                        i += count;
                        continue;
                    }
                }
                i += 1;
            }
            s += 1;
        }
    }
}

/// Coarsest equitable partition reached by refining the unit partition
/// (colour refinement), cells ordered by smallest vertex.
pub fn coarsest_equitable(g: &Graph, kind: MatrixKind) -> Partition {
    let mut cells = vec![g.vertices()];
    refine(g, kind, &mut cells);
    Partition { n: g.order(), cells }.sorted()
}

/// Exact quotient of an equitable partition, with the cell sizes it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    k: usize,
    entries: Vec<BigRational>,
    cell_sizes: Vec<usize>,
}

impl QuotientMatrix {
    /// A quotient given directly; `cell_sizes` is needed to symmetrize.
    pub fn from_ints(rows: &[Vec<i64>], cell_sizes: Vec<usize>) -> Self {
        let k = rows.len();
        assert!(rows.iter().all(|r| r.len() == k), "square matrix expected");
        assert_eq!(cell_sizes.len(), k);
        QuotientMatrix {
            k,
            entries: rows.iter().flatten().map(|&x| rat(x)).collect(),
            cell_sizes,
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.cell_sizes
    }

    /// Entries as integers when all of them are integral.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| {
                        let x = self.get(i, j);
                        if x.is_integer() {
                            x.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `D^{1/2} B D^{-1/2}` with `D = diag(|X_i|)`: symmetric, with the same
    /// eigenvalues as `B`.
    pub fn symmetrized(&self) -> Result<SymMatrix, SpectralError> {
        let k = self.k;
        let mut data = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                let bij = self.get(i, j).to_f64().unwrap_or(f64::NAN);
                let scale = (self.cell_sizes[i] as f64 / self.cell_sizes[j] as f64).sqrt();
                data[i * k + j] = bij * scale;
            }
        }
        // round off the last-bit asymmetry of the two scalings
        for i in 0..k {
            for j in i + 1..k {
                let avg = 0.5 * (data[i * k + j] + data[j * k + i]);
                data[i * k + j] = avg;
                data[j * k + i] = avg;
            }
        }
        SymMatrix::new(k, data)
    }

    /// All eigenvalues, non-increasing.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SpectralError> {
        Ok(jacobi_eigen(&self.symmetrized()?)?.values)
    }

    pub fn largest_eigenvalue(&self) -> Result<f64, SpectralError> {
        Ok(spectral_radius(&self.symmetrized()?, crate::spectral::DEFAULT_TOL)?.radius)
    }
}

pub fn quotient_matrix(g: &Graph, p: &Partition, kind: MatrixKind) -> Result<QuotientMatrix, PartitionError> {
    p.check_graph(g)?;
    if let Some((i, j)) = first_non_constant_block(g, p, kind) {
        return Err(PartitionError::NotEquitable(i, j));
    }
    let k = p.len();
    let entries = p
        .cells
        .iter()
        .flat_map(|&ci| {
            let v = ci.first().expect("nonempty");
            p.cells
                .iter()
                .map(move |&cj| BigRational::from_integer(BigInt::from(block_weight(g, kind, v, cj))))
        })
        .collect();
    Ok(QuotientMatrix {
        k,
        entries,
        cell_sizes: p.cell_sizes(),
    })
}

/// Exact monic characteristic polynomial `det(xI − B)`.
pub fn char_poly(q: &QuotientMatrix) -> Polynomial {
    faddeev_leverrier(q.k, &q.entries)
}

/// Exact characteristic polynomial of the whole adjacency or signless
/// Laplacian matrix.
pub fn graph_char_poly(g: &Graph, kind: MatrixKind) -> Polynomial {
    let n = g.order();
    let entries: Vec<BigRational> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                let x = match (i == j, kind) {
                    (true, MatrixKind::SignlessLaplacian) => g.degree(i),
                    (true, MatrixKind::Adjacency) => 0,
                    (false, _) => g.has_edge(i, j) as usize,
                };
                rat(x as i64)
            })
        })
        .collect();
    faddeev_leverrier(n, &entries)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Check {
    pub quotient_radius: f64,
    pub matrix_radius: f64,
    pub holds: bool,
}

/// Compares the largest eigenvalue of the quotient (through the symmetrized
/// form) with the spectral radius of the whole matrix.
pub fn lemma1_check(g: &Graph, p: &Partition, kind: MatrixKind, tol: f64) -> Result<Lemma1Check, PartitionError> {
    if !g.is_connected() {
        return Err(PartitionError::Disconnected);
    }
    let q = quotient_matrix(g, p, kind)?;
    let quotient_radius = q.largest_eigenvalue()?;
    let matrix_radius = spectral_radius(&kind.matrix(g), crate::spectral::DEFAULT_TOL)?.radius;
    Ok(Lemma1Check {
        quotient_radius,
        matrix_radius,
        holds: (quotient_radius - matrix_radius).abs() <= tol,
    })
}

pub fn verify_lemma1(g: &Graph, p: &Partition, kind: MatrixKind, tol: f64) -> Result<bool, PartitionError> {
    Ok(lemma1_check(g, p, kind, tol)?.holds)
}

/// Whether `p` is zero in exact arithmetic at every quotient eigenvalue's
/// rational neighborhood is not decidable here; this is the floating check
/// `|p(λ)| ≤ tol` at the largest quotient eigenvalue.
pub fn char_poly_vanishes_at_radius(q: &QuotientMatrix, tol: f64) -> Result<bool, SpectralError> {
    let lambda = q.largest_eigenvalue()?;
    Ok(char_poly(q).eval_f64(lambda).abs() <= tol)
}

pub fn is_zero_matrix(q: &QuotientMatrix) -> bool {
    q.entries.iter().all(Zero::is_zero)
}
