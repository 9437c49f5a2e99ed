//! Exhaustive maximization of spectral radii over wheel-free graphs.
//!
//! Every wheel-free class of order `n` (connected or not) is examined.
//! Graphs are visited in decreasing order of a cheap upper bound on their
//! radius, and the scan stops once the bound falls below the running
//! maximum minus the tie tolerance, so skipped graphs cannot matter.
//! Candidates within the tolerance of the maximum are confirmed exactly from
//! integer characteristic polynomials before they enter the extremal set.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::enumerate::{enumerate_graphs, Budget, EnumerationError, GeneratorConfig, Predicate};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::partition::graph_char_poly;
use crate::poly::{rat_from_f64, Polynomial};
use crate::spectral::{
    closed_form_rho_a_hn, closed_form_rho_a_hn_label, closed_form_rho_q, closed_form_rho_q_label,
    fast_spectral_radius, spectral_radius, walk_count_r, MatrixKind, SpectralError, DEFAULT_TOL,
};
use crate::wheel::{check_fact2, is_wheel_free};

pub const DEFAULT_TIE_TOL: f64 = 1e-9;
/// Agreement required of the refined numeric fallback for ties.
const REFINED_TIE_TOL: f64 = 1e-13;
/// Width of the window below a radius in which no other root may lie for
/// the exact tie test to apply.
const ROOT_WINDOW: f64 = 1e-6;
/// Graphs whose radius is computed between two bound checks.
const BATCH: usize = 256;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("order {n} is outside {lo}..={hi}")]
    OrderOutOfRange { n: usize, lo: usize, hi: usize },
    #[error("empty range {0}..={1}")]
    EmptyRange(usize, usize),
    #[error("tie tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TieCheck {
    /// Classes within the float tolerance of the maximum.
    pub candidates: usize,
    /// Ties settled by equal characteristic polynomials or a shared simple
    /// largest root.
    pub exact: usize,
    /// Ties accepted only by the refined eigensolve.
    pub numeric: usize,
    pub rejected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub kind: MatrixKind,
    pub max_radius: f64,
    /// Canonical graph6 strings, sorted.
    pub extremal: Vec<String>,
    pub class_count: usize,
    /// Classes whose radius was computed; the rest were excluded by bound.
    pub radii_computed: usize,
    pub exhaustive: bool,
    /// Seconds.
    pub elapsed: f64,
    pub tie_check: TieCheck,
    pub extremal_connected: Vec<bool>,
}

/// Upper bound on the radius: `min(Δ, √max R_v)` for `A`, and
/// `min(2Δ, √max_v (Q²1)_v)` for `Q`, where `(Q²1)_v = 2(d_v² + Σ_{w~v} d_w)`.
pub fn radius_upper_bound(g: &Graph, kind: MatrixKind) -> f64 {
    let degrees = g.degrees();
    let delta = degrees.iter().copied().max().unwrap_or(0) as f64;
    let max_square_row = (0..g.order())
        .map(|v| {
            let nbr_sum: usize = g.neighbors(v).iter().map(|w| degrees[w]).sum();
            match kind {
                MatrixKind::Adjacency => nbr_sum,
                MatrixKind::SignlessLaplacian => 2 * (degrees[v] * degrees[v] + nbr_sum),
            }
        })
        .max()
        .unwrap_or(0) as f64;
    let cap = match kind {
        MatrixKind::Adjacency => delta,
        MatrixKind::SignlessLaplacian => 2.0 * delta,
    };
    cap.min(max_square_row.sqrt())
}

/// How two graphs were found to share their largest eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieEvidence {
    Exact,
    Numeric,
}

/// Whether `p` and `q` share their largest real root, given a float estimate
/// `r` of it. Equal polynomials settle it at once. Otherwise both must have
/// exactly one distinct root above `r − ROOT_WINDOW`, and so must their gcd.
pub fn same_largest_root(p: &Polynomial, q: &Polynomial, r: f64) -> bool {
    if p == q {
        return true;
    }
    let lo = rat_from_f64(r - ROOT_WINDOW);
    let g = p.gcd(q);
    p.count_roots(&lo, None) == 1 && q.count_roots(&lo, None) == 1 && g.count_roots(&lo, None) >= 1
}

fn confirm_tie(a: &Graph, b: &Graph, kind: MatrixKind, r: f64) -> Result<Option<TieEvidence>, SpectralError> {
    if same_largest_root(&graph_char_poly(a, kind), &graph_char_poly(b, kind), r) {
        return Ok(Some(TieEvidence::Exact));
    }
    let ra = spectral_radius(&kind.matrix(a), DEFAULT_TOL)?.radius;
    let rb = spectral_radius(&kind.matrix(b), DEFAULT_TOL)?.radius;
    Ok(((ra - rb).abs() <= REFINED_TIE_TOL).then_some(TieEvidence::Numeric))
}

/// Whether `x` (a float estimate) is exactly the largest root of the
/// matrix polynomial and a root of `factor`.
pub fn radius_is_root_of(g: &Graph, kind: MatrixKind, factor: &Polynomial, x: f64) -> bool {
    let p = graph_char_poly(g, kind);
    let lo = rat_from_f64(x - ROOT_WINDOW);
    p.count_roots(&lo, None) == 1 && p.gcd(factor).count_roots(&lo, None) >= 1
}

pub fn max_spectral_radius(
    n: usize,
    kind: MatrixKind,
    tie_tol: f64,
    budget: Budget,
) -> Result<SearchReport, SearchError> {
    if !(tie_tol > 0.0) {
        return Err(SearchError::BadTolerance(tie_tol));
    }
    if !(1..=crate::enumerate::HARD_MAX_ORDER).contains(&n) {
        return Err(SearchError::OrderOutOfRange {
            n,
            lo: 1,
            hi: crate::enumerate::HARD_MAX_ORDER,
        });
    }
    let start = Instant::now();
    let config = GeneratorConfig::new(n, Predicate::WheelFree)
        .with_budget(budget)
        .allow_large(true);
    let enumeration = enumerate_graphs(&config)?;
    let forms = &enumeration.forms;

    let mut order: Vec<(f64, usize)> = forms
        .par_iter()
        .enumerate()
        .map(|(i, f)| (radius_upper_bound(&f.to_graph(), kind), i))
        .collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut radii: Vec<(usize, f64)> = Vec::new();
    let mut max_radius = f64::NEG_INFINITY;
    for batch in order.chunks(BATCH) {
        if batch[0].0 < max_radius - tie_tol {
            break;
        }
        let computed: Vec<Result<(usize, f64), SpectralError>> = batch
            .par_iter()
            .filter(|(bound, _)| *bound >= max_radius - tie_tol)
            .map(|&(_, i)| {
                let m = kind.matrix(&forms[i].to_graph());
                Ok((i, fast_spectral_radius(&m, DEFAULT_TOL)?.radius))
            })
            .collect();
        for r in computed {
            let (i, radius) = r?;
            max_radius = max_radius.max(radius);
            radii.push((i, radius));
        }
    }

    let mut candidates: Vec<(usize, f64)> = radii
        .iter()
        .copied()
        .filter(|&(_, r)| r >= max_radius - tie_tol)
        .collect();
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut tie_check = TieCheck {
        candidates: candidates.len(),
        ..TieCheck::default()
    };
    let mut extremal: Vec<CanonicalForm> = Vec::new();
    if let Some(&(lead, lead_radius)) = candidates.first() {
        let lead_graph = forms[lead].to_graph();
        extremal.push(forms[lead]);
        for &(i, _) in &candidates[1..] {
            match confirm_tie(&lead_graph, &forms[i].to_graph(), kind, lead_radius)? {
                Some(TieEvidence::Exact) => {
                    tie_check.exact += 1;
                    extremal.push(forms[i]);
                }
                Some(TieEvidence::Numeric) => {
                    tie_check.numeric += 1;
                    extremal.push(forms[i]);
                }
                None => tie_check.rejected += 1,
            }
        }
    }
    extremal.sort_by_cached_key(|f| f.to_graph6());
    let extremal_connected = extremal.iter().map(|f| f.to_graph().is_connected()).collect();
    Ok(SearchReport {
        n,
        kind,
        max_radius: if extremal.is_empty() { 0.0 } else { max_radius },
        extremal: extremal.iter().map(CanonicalForm::to_graph6).collect(),
        class_count: forms.len(),
        radii_computed: radii.len(),
        exhaustive: enumeration.exhaustive,
        elapsed: start.elapsed().as_secs_f64(),
        tie_check,
        extremal_connected,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: u8,
    pub n: usize,
    pub pass: bool,
    pub max_radius: f64,
    pub closed_form: f64,
    pub closed_form_label: String,
    pub extremal: Vec<String>,
    pub expected: Vec<String>,
    /// The maximum is exactly a root of the closed form's polynomial.
    pub exact_radius: bool,
    pub extremal_wheel_free: bool,
    pub extremal_connected: Vec<bool>,
    pub class_count: usize,
    pub exhaustive: bool,
    pub elapsed: f64,
}

/// Polynomial whose largest root is `ρ_A(H_n)`.
pub fn hn_radius_polynomial(n: usize) -> Polynomial {
    let n = n as i64;
    match n % 4 {
        1 | 3 => Polynomial::new(vec![
            crate::poly::ratio(-(n + 1), 2),
            crate::poly::rat(1),
        ]),
        // x^2 - x - n^2/4
        0 => Polynomial::from_ints(&[-(n * n / 4), -1, 1]),
        _ => Polynomial::from_ints(&[n / 2, -(n * n / 4), -1, 1]),
    }
}

/// `x² − (n+2)x + 4`, whose largest root is `ρ_Q(K_2 ∇ (n−2)K_1)`.
pub fn q_radius_polynomial(n: usize) -> Polynomial {
    Polynomial::from_ints(&[4, -(n as i64 + 2), 1])
}

fn check_range(lo: usize, hi: usize) -> Result<(), SearchError> {
    for n in [lo, hi] {
        if !(4..=10).contains(&n) {
            return Err(SearchError::OrderOutOfRange { n, lo: 4, hi: 10 });
        }
    }
    if lo > hi {
        return Err(SearchError::EmptyRange(lo, hi));
    }
    Ok(())
}

fn verdict(
    theorem: u8,
    report: SearchReport,
    expected: Vec<Graph>,
    closed_form: f64,
    closed_form_label: String,
    factor: &Polynomial,
    kind: MatrixKind,
) -> Result<TheoremVerdict, SearchError> {
    let mut expected: Vec<String> = expected
        .iter()
        .map(|g| canonical_form(g).map(|f| f.to_graph6()))
        .collect::<Result<_, _>>()
        .expect("orders are within the canonical cap");
    expected.sort();
    let graphs: Vec<Graph> = report
        .extremal
        .iter()
        .map(|s| crate::graph6::from_graph6(s).expect("canonical graph6 round-trips"))
        .collect();
    let extremal_wheel_free = graphs.iter().all(|g| is_wheel_free(g) && check_fact2(g).is_empty());
    let exact_radius = graphs
        .iter()
        .all(|g| radius_is_root_of(g, kind, factor, report.max_radius));
    let pass = report.exhaustive
        && report.extremal == expected
        && (report.max_radius - closed_form).abs() <= 1e-8
        && exact_radius
        && extremal_wheel_free;
    Ok(TheoremVerdict {
        theorem,
        n: report.n,
        pass,
        max_radius: report.max_radius,
        closed_form,
        closed_form_label,
        extremal: report.extremal,
        expected,
        exact_radius,
        extremal_wheel_free,
        extremal_connected: report.extremal_connected,
        class_count: report.class_count,
        exhaustive: report.exhaustive,
        elapsed: report.elapsed,
    })
}

/// Adjacency maximum at each order: the extremal set must be exactly
/// `{H_n}`, or `{H_7, F}` at order 7, with radius `ρ_A(H_n)`.
pub fn verify_theorem1(lo: usize, hi: usize, budget: Budget) -> Result<Vec<TheoremVerdict>, SearchError> {
    check_range(lo, hi)?;
    (lo..=hi)
        .map(|n| {
            let report = max_spectral_radius(n, MatrixKind::Adjacency, DEFAULT_TIE_TOL, budget)?;
            let mut expected = vec![Graph::h_n(n)?];
            if n == 7 {
                expected.push(Graph::f7());
            }
            verdict(
                1,
                report,
                expected,
                closed_form_rho_a_hn(n)?,
                closed_form_rho_a_hn_label(n).unwrap_or_default(),
                &hn_radius_polynomial(n),
                MatrixKind::Adjacency,
            )
        })
        .collect()
}

/// Signless Laplacian maximum at each order: the extremal set must be
/// exactly `{K_2 ∇ (n−2)K_1}`.
pub fn verify_theorem2(lo: usize, hi: usize, budget: Budget) -> Result<Vec<TheoremVerdict>, SearchError> {
    check_range(lo, hi)?;
    (lo..=hi)
        .map(|n| {
            let report = max_spectral_radius(n, MatrixKind::SignlessLaplacian, DEFAULT_TIE_TOL, budget)?;
            verdict(
                2,
                report,
                vec![Graph::k2_join_independent(n)?],
                closed_form_rho_q(n)?,
                closed_form_rho_q_label(n).unwrap_or_default(),
                &q_radius_polynomial(n),
                MatrixKind::SignlessLaplacian,
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralDiagnostics {
    /// Lowest-index vertex maximizing `R_v`.
    pub u: usize,
    pub r_u: usize,
    /// `V = {u} ∪ N(u) ∪ N_2(u)`.
    pub diameter_two_from_u: bool,
    /// Maximum number of vertex-disjoint `P_3`s in `G[N(u)]`.
    pub p_u: usize,
    pub r_u_bound: f64,
    pub r_u_bound_holds: bool,
}

/// Maximum number of vertex-disjoint paths on three vertices (not
/// necessarily induced) inside `s`.
pub fn max_disjoint_p3(g: &Graph, s: VertexSet) -> usize {
    fn go(g: &Graph, s: VertexSet, memo: &mut std::collections::HashMap<u64, usize>) -> usize {
        if s.len() < 3 {
            return 0;
        }
        if let Some(&v) = memo.get(&s.bits()) {
            return v;
        }
        let v = s.first().expect("nonempty");
        let mut without_v = s;
        without_v.remove(v);
        let mut best = go(g, without_v, memo);
        // v as an end: v - c - w
        for c in g.neighbors(v).intersection(without_v) {
            for w in g.neighbors(c).intersection(without_v) {
                if w != c {
                    let rest = without_v.difference(VertexSet::from_vertices([c, w]));
                    best = best.max(1 + go(g, rest, memo));
                }
            }
        }
        // v as the center: a - v - b
        let nv: Vec<usize> = g.neighbors(v).intersection(without_v).iter().collect();
        for (i, &a) in nv.iter().enumerate() {
            for &b in &nv[i + 1..] {
                let rest = without_v.difference(VertexSet::from_vertices([a, b]));
                best = best.max(1 + go(g, rest, memo));
            }
        }
        memo.insert(s.bits(), best);
        best
    }
    go(g, s, &mut std::collections::HashMap::new())
}

pub fn structural_diagnostics(g: &Graph) -> Result<StructuralDiagnostics, SearchError> {
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let n = g.order();
    let mut u = 0;
    let mut r_u = 0;
    for v in 0..n {
        let r = walk_count_r(g, v)?;
        if r > r_u {
            u = v;
            r_u = r;
        }
    }
    let nbhd = g.neighbors(u);
    let covered = VertexSet::singleton(u)
        .union(nbhd)
        .union(g.second_neighborhood(u)?);
    let bound = ((n + 1) * (n + 1) - 1) as f64 / 4.0;
    Ok(StructuralDiagnostics {
        u,
        r_u,
        diameter_two_from_u: covered == g.vertices(),
        p_u: max_disjoint_p3(g, nbhd),
        r_u_bound: bound,
        r_u_bound_holds: r_u as f64 >= bound,
    })
}
