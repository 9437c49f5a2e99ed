//! Dense symmetric eigensolvers and the spectral quantities used by the
//! search: adjacency and signless Laplacian matrices, spectral radii with
//! Perron vectors, closed-form radii of the extremal families, and the
//! two-step walk counts `R_v`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const POWER_MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix data has {len} entries, expected {dim}x{dim}")]
    Shape { dim: usize, len: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix has a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("matrix has dimension zero")]
    EmptyMatrix,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence { method: &'static str, iterations: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Adjacency,
    SignlessLaplacian,
}

impl MatrixKind {
    pub fn matrix(self, g: &Graph) -> SymMatrix {
        match self {
            MatrixKind::Adjacency => adjacency_matrix(g),
            MatrixKind::SignlessLaplacian => signless_laplacian(g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::SignlessLaplacian => "signless_laplacian",
        }
    }
}

/// A real symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self, SpectralError> {
        if dim == 0 {
            return Err(SpectralError::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(SpectralError::Shape { dim, len: data.len() });
        }
        for i in 0..dim {
            for j in 0..dim {
                if !data[i * dim + j].is_finite() {
                    return Err(SpectralError::NonFinite(i, j));
                }
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(SpectralError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let dim = rows.len();
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(SpectralError::Shape { dim, len: data.len() });
        }
        SymMatrix::new(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0.0)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `max_i Σ_j |m_ij|`, an upper bound on every `|λ|`.
    pub fn abs_row_sum_bound(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖Mx − λx‖∞`.
    pub fn residual(&self, lambda: f64, x: &[f64]) -> f64 {
        self.mul_vec(x)
            .iter()
            .zip(x)
            .map(|(y, xi)| (y - lambda * xi).abs())
            .fold(0.0, f64::max)
    }

    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        let y = self.mul_vec(x);
        dot(x, &y) / dot(x, x)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    let n = g.order();
    let mut data = vec![0.0; n * n];
    for (u, v) in g.edges() {
        data[u * n + v] = 1.0;
        data[v * n + u] = 1.0;
    }
    SymMatrix { dim: n, data }
}

/// `Q = D + A`.
pub fn signless_laplacian(g: &Graph) -> SymMatrix {
    let mut m = adjacency_matrix(g);
    let n = g.order();
    for v in 0..n {
        m.data[v * n + v] = g.degree(v) as f64;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Jacobi,
    Power,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub radius: f64,
    /// Unit eigenvector for `radius`; nonnegative for nonnegative matrices,
    /// otherwise oriented so its first nonzero entry is positive.
    pub perron: Vec<f64>,
    pub residual: f64,
    pub method: Method,
    pub iterations: usize,
}

/// Full eigendecomposition: eigenvalues in non-increasing order with
/// matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes relative to
/// the matrix norm, capped at `10·dim²` sweeps.
pub fn jacobi_eigen(m: &SymMatrix) -> Result<Eigen, SpectralError> {
    let n = m.dim;
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let max_sweeps = 10 * n * n;
    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * norm * 1e-2 || off == 0.0 {
            break;
        }
        if sweeps == max_sweeps {
            return Err(SpectralError::NoConvergence {
                method: "jacobi",
                iterations: sweeps,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]).then(i.cmp(&j)));
    Ok(Eigen {
        values: order.iter().map(|&i| a[i * n + i]).collect(),
        vectors: order
            .iter()
            .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
            .collect(),
        sweeps,
    })
}

fn normalize(x: &mut [f64]) {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|xi| *xi /= norm);
    }
}

/// Unit norm; nonnegative when `m` is, otherwise first nonzero entry
/// positive.
fn orient(m: &SymMatrix, x: &mut [f64]) {
    if m.is_nonnegative() {
        // for a nonnegative matrix |x| has the same Rayleigh quotient bound,
        // so it is again a top eigenvector
        x.iter_mut().for_each(|xi| *xi = xi.abs());
    } else if let Some(first) = x.iter().find(|xi| xi.abs() > 1e-14) {
        if *first < 0.0 {
            x.iter_mut().for_each(|xi| *xi = -*xi);
        }
    }
    normalize(x);
}

/// Largest eigenvalue and its eigenvector by full Jacobi diagonalization.
pub fn spectral_radius(m: &SymMatrix, tol: f64) -> Result<SpectralResult, SpectralError> {
    if !(tol > 0.0) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let eig = jacobi_eigen(m)?;
    let mut perron = eig.vectors[0].clone();
    orient(m, &mut perron);
    let radius = if m.is_nonnegative() {
        m.rayleigh_quotient(&perron)
    } else {
        eig.values[0]
    };
    let residual = m.residual(radius, &perron);
    Ok(SpectralResult {
        radius,
        perron,
        residual,
        method: Method::Jacobi,
        iterations: eig.sweeps,
    })
}

/// Power iteration on `M + sI` with `s` the largest absolute row sum, which
/// makes the shifted spectrum nonnegative so the top eigenvalue dominates.
/// Starts from the all-ones vector, so it is meant for nonnegative matrices.
pub fn power_iteration(m: &SymMatrix, tol: f64, max_steps: usize) -> Result<SpectralResult, SpectralError> {
    if !(tol > 0.0) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let n = m.dim;
    let shift = m.abs_row_sum_bound();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    if shift == 0.0 {
        return Ok(SpectralResult {
            radius: 0.0,
            perron: x,
            residual: 0.0,
            method: Method::Power,
            iterations: 0,
        });
    }
    for step in 1..=max_steps {
        let y = m.mul_vec(&x);
        let lambda = dot(&x, &y);
        let residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - lambda * xi).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            orient(m, &mut x);
            let radius = m.rayleigh_quotient(&x);
            return Ok(SpectralResult {
                radius,
                residual: m.residual(radius, &x),
                perron: x,
                method: Method::Power,
                iterations: step,
            });
        }
        x = y.iter().zip(&x).map(|(yi, xi)| yi + shift * xi).collect();
        normalize(&mut x);
    }
    Err(SpectralError::NoConvergence {
        method: "power",
        iterations: max_steps,
    })
}

/// Power iteration with a Jacobi fallback.
pub fn fast_spectral_radius(m: &SymMatrix, tol: f64) -> Result<SpectralResult, SpectralError> {
    match power_iteration(m, tol, POWER_MAX_STEPS) {
        Err(SpectralError::NoConvergence { .. }) => spectral_radius(m, tol),
        other => other,
    }
}

pub fn rho_a(g: &Graph) -> Result<f64, SpectralError> {
    Ok(spectral_radius(&adjacency_matrix(g), DEFAULT_TOL)?.radius)
}

pub fn rho_q(g: &Graph) -> Result<f64, SpectralError> {
    Ok(spectral_radius(&signless_laplacian(g), DEFAULT_TOL)?.radius)
}

fn too_small(family: &'static str, min: usize, n: usize) -> SpectralError {
    SpectralError::Graph(GraphError::TooSmall { family, min, n })
}

/// `x³ − x² − (n²/4)x + n/2`.
pub fn hn_cubic(n: f64, x: f64) -> f64 {
    ((x - 1.0) * x - n * n / 4.0) * x + n / 2.0
}

/// Largest root of [`hn_cubic`]: 200 bisection steps on
/// `[(√(n²−3)+1)/2, n/2+1]` (the cubic is negative at the left end and
/// positive at the right end), then five Newton steps.
pub fn hn_cubic_largest_root(n: usize) -> f64 {
    let nf = n as f64;
    let mut lo = ((nf * nf - 3.0).sqrt() + 1.0) / 2.0;
    let mut hi = nf / 2.0 + 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hn_cubic(nf, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..5 {
        let fx = hn_cubic(nf, x);
        let dfx = (3.0 * x - 2.0) * x - nf * nf / 4.0;
        if fx == 0.0 || dfx == 0.0 {
            break;
        }
        x -= fx / dfx;
    }
    x
}

/// `ρ_A(H_n)` from its closed forms.
pub fn closed_form_rho_a_hn(n: usize) -> Result<f64, SpectralError> {
    if n < 4 {
        return Err(too_small("H_n", 4, n));
    }
    let nf = n as f64;
    Ok(match n % 4 {
        1 | 3 => (nf + 1.0) / 2.0,
        0 => ((nf * nf + 1.0).sqrt() + 1.0) / 2.0,
        _ => hn_cubic_largest_root(n),
    })
}

/// `ρ_Q(K_2 ∇ (n−2)K_1) = (n + 2 + √((n+2)² − 16)) / 2`.
pub fn closed_form_rho_q(n: usize) -> Result<f64, SpectralError> {
    if n < 3 {
        return Err(too_small("K_2 join (n-2)K_1", 3, n));
    }
    let m = n as f64 + 2.0;
    Ok((m + (m * m - 16.0).sqrt()) / 2.0)
}

/// Human-readable closed form for `ρ_A(H_n)`.
pub fn closed_form_rho_a_hn_label(n: usize) -> Option<String> {
    if n < 4 {
        return None;
    }
    Some(match n % 4 {
        1 | 3 => format!("{}", (n + 1) / 2),
        0 => format!("(1 + sqrt({}))/2", n * n + 1),
        _ => format!("largest root of x^3 - x^2 - {}x + {}", n * n / 4, n / 2),
    })
}

pub fn closed_form_rho_q_label(n: usize) -> Option<String> {
    (n >= 3).then(|| format!("({} + sqrt({}))/2", n + 2, (n + 2) * (n + 2) - 16))
}

/// `R_v = d_v + 2e(G[N(v)]) + e(N(v), N_2(v))`, the number of walks of
/// length two starting at `v`.
pub fn walk_count_r(g: &Graph, v: usize) -> Result<usize, GraphError> {
    let nbhd = g.neighborhood(v)?;
    let second = g.second_neighborhood(v)?;
    Ok(nbhd.len() + 2 * g.edges_within(nbhd) + g.edges_between(nbhd, second)?)
}

/// Smallest and largest row sums.
pub fn row_sum_bounds(m: &SymMatrix) -> (f64, f64) {
    m.row_sums()
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)))
}
