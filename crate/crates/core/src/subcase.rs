//! Six-cell quotients of `G(d_u−2b−1, b, 0, n−1−d_u)` and their displayed
//! characteristic polynomials, checked at concrete integer parameters.
//!
//! Cells, in vertex order: `{u}`, `{u_0}`, `{u_1, ..}`, `{v_1, .., v_b}`,
//! `{w_1, .., w_b}`, `{z_1, ..}`. Each instantiation is compared exactly, so
//! a passing check proves the identity at that point.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::partition::{char_poly, quotient_matrix, Partition, PartitionError};
use crate::poly::Polynomial;
use crate::spectral::MatrixKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubcaseError {
    #[error("invalid parameters (n={n}, d_u={d_u}, b={b}): {reason}")]
    Parameters { n: i64, d_u: i64, b: i64, reason: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubcaseCheck {
    pub n: i64,
    pub d_u: i64,
    pub b: i64,
    /// The quotient extracted from the graph equals the displayed matrix.
    pub quotient_matches: bool,
    /// Ascending coefficients, as strings of exact rationals.
    pub computed: Vec<String>,
    pub expected: Vec<String>,
    pub holds: bool,
}

/// Displayed characteristic polynomial for `b = 1`.
pub fn phi_b1(n: i64, d: i64) -> Polynomial {
    Polynomial::from_ints(&[
        d * d - (n + 2) * d + 3 * n - 3,
        2 * n - 8,
        -(3 * d * d - (3 * n + 6) * d + 6 * n + 3),
        4 - 2 * n,
        d * d - (n + 2) * d + n,
        0,
        1,
    ])
}

/// Displayed characteristic polynomial for `2 ≤ b ≤ (d_u − 2)/2`.
pub fn phi_b(n: i64, d: i64, b: i64) -> Polynomial {
    Polynomial::from_ints(&[
        d * d - (n + 2 * b) * d + (2 * b + 1) * (n - 1),
        (2 - 2 * b) * d + (2 * n - 6) * b - 2,
        -((b + 2) * d * d - (b * b + (b + 2) * n + 3 * b + 2) * d + (b + 1) * (b + 2) * n + 4 * b - 1),
        (2 * b - 2) * d + 2 * b + 2 - 2 * b * n,
        d * d - (n + 2) * d + n + b - 1,
        0,
        1,
    ])
}

/// Displayed six-cell quotient.
pub fn displayed_quotient(n: i64, d: i64, b: i64) -> Vec<Vec<i64>> {
    let a = d - 2 * b - 1;
    let z = n - 1 - d;
    vec![
        vec![0, 1, a, b, b, 0],
        vec![1, 0, a, b, 0, 0],
        vec![1, 1, 0, 0, 0, z],
        vec![1, 1, 0, 0, 1, z],
        vec![1, 0, 0, 1, 0, z],
        vec![0, 0, a, b, b, 0],
    ]
}

fn to_usize(n: i64, d_u: i64, b: i64, x: i64) -> Result<usize, SubcaseError> {
    usize::try_from(x).map_err(|_| SubcaseError::Parameters {
        n,
        d_u,
        b,
        reason: "negative cell size",
    })
}

/// The graph `G(d_u−2b−1, b, 0, n−1−d_u)` and its six-cell partition.
pub fn six_cell_instance(n: i64, d_u: i64, b: i64) -> Result<(Graph, Partition), SubcaseError> {
    let bad = |reason| SubcaseError::Parameters { n, d_u, b, reason };
    if b < 1 {
        return Err(bad("b must be at least 1"));
    }
    if d_u > n - 1 {
        return Err(bad("d_u exceeds n - 1"));
    }
    let a = to_usize(n, d_u, b, d_u - 2 * b - 1)?;
    let z = to_usize(n, d_u, b, n - 1 - d_u)?;
    if a == 0 {
        return Err(bad("the u_i cell is empty"));
    }
    if z == 0 {
        return Err(bad("the z cell is empty"));
    }
    let b = b as usize;
    let g = Graph::g_abcd(a, b, 0, z)?;
    let range = |lo: usize, len: usize| VertexSet::from_vertices(lo..lo + len);
    let cells = vec![
        range(0, 1),
        range(1, 1),
        range(2, a),
        range(2 + a, b),
        range(2 + a + b, b),
        range(2 + a + 2 * b, z),
    ];
    Ok((g, Partition::new(n as usize, cells)?))
}

fn coeff_strings(p: &Polynomial, len: usize) -> Vec<String> {
    (0..len).map(|i| p.coeff(i).to_string()).collect()
}

/// Builds the graph, extracts its quotient, and compares the exact
/// characteristic polynomial with the displayed one coefficient by
/// coefficient. `b = 1` uses the dedicated `b = 1` display.
pub fn subcase_check(n: i64, d_u: i64, b: i64) -> Result<SubcaseCheck, SubcaseError> {
    if b >= 2 && 2 * b > d_u - 2 {
        return Err(SubcaseError::Parameters {
            n,
            d_u,
            b,
            reason: "b exceeds (d_u - 2)/2",
        });
    }
    let (g, p) = six_cell_instance(n, d_u, b)?;
    let q = quotient_matrix(&g, &p, MatrixKind::Adjacency)?;
    let quotient_matches = q.to_int_rows().as_ref() == Some(&displayed_quotient(n, d_u, b));
    let computed = char_poly(&q);
    let expected = if b == 1 { phi_b1(n, d_u) } else { phi_b(n, d_u, b) };
    Ok(SubcaseCheck {
        n,
        d_u,
        b,
        quotient_matches,
        computed: coeff_strings(&computed, 7),
        expected: coeff_strings(&expected, 7),
        holds: quotient_matches && computed == expected,
    })
}

pub fn subcase_char_poly_check(n: i64, d_u: i64, b: i64) -> Result<bool, SubcaseError> {
    Ok(subcase_check(n, d_u, b)?.holds)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfCaseCheck {
    pub n: i64,
    pub d_u: i64,
    pub quotient_matches: bool,
    pub lambda1: f64,
    pub bound: f64,
    pub below_bound: bool,
}

/// The `b = (d_u − 1)/2` case: five cells `{u}, {u_0}, {v_i}, {w_i}, {z_j}`
/// of `G(0, (d_u−1)/2, 0, n−1−d_u)`. No polynomial is displayed for it, so
/// the largest quotient eigenvalue is compared with `(2n+1)/4`.
pub fn half_case_check(n: i64, d_u: i64) -> Result<HalfCaseCheck, SubcaseError> {
    let bad = |reason| SubcaseError::Parameters { n, d_u, b: (d_u - 1) / 2, reason };
    if d_u < 3 || d_u % 2 == 0 {
        return Err(bad("d_u must be odd and at least 3"));
    }
    if n - 1 - d_u < 1 {
        return Err(bad("the z cell is empty"));
    }
    let h = ((d_u - 1) / 2) as usize;
    let z = (n - 1 - d_u) as usize;
    let g = Graph::g_abcd(0, h, 0, z)?;
    let range = |lo: usize, len: usize| VertexSet::from_vertices(lo..lo + len);
    let p = Partition::new(
        n as usize,
        vec![range(0, 1), range(1, 1), range(2, h), range(2 + h, h), range(2 + 2 * h, z)],
    )?;
    let q = quotient_matrix(&g, &p, MatrixKind::Adjacency)?;
    let (hh, zz) = (h as i64, z as i64);
    let displayed = vec![
        vec![0, 1, hh, hh, 0],
        vec![1, 0, hh, 0, 0],
        vec![1, 1, 0, 1, zz],
        vec![1, 0, 1, 0, zz],
        vec![0, 0, hh, hh, 0],
    ];
    let lambda1 = q.largest_eigenvalue().map_err(PartitionError::from)?;
    let bound = (2 * n + 1) as f64 / 4.0;
    Ok(HalfCaseCheck {
        n,
        d_u,
        quotient_matches: q.to_int_rows() == Some(displayed),
        lambda1,
        bound,
        below_bound: lambda1 < bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_instances() {
        assert!(subcase_char_poly_check(13, 7, 2).unwrap());
        assert!(subcase_char_poly_check(13, 7, 1).unwrap());
        for (n, d, b) in [(13, 8, 2), (13, 8, 3), (15, 9, 3), (17, 9, 2), (17, 10, 4), (21, 11, 4)] {
            let c = subcase_check(n, d, b).unwrap();
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn b1_display_is_the_general_display_at_b1() {
        for n in 8..30 {
            for d in 3..n - 1 {
                assert_eq!(phi_b1(n, d), phi_b(n, d, 1));
            }
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        // d_u - 2b - 1 = 0 empties the u_i cell
        assert!(matches!(subcase_check(13, 5, 2), Err(SubcaseError::Parameters { .. })));
        assert!(matches!(subcase_check(8, 7, 2), Err(SubcaseError::Parameters { .. })));
        assert!(matches!(subcase_check(13, 7, 0), Err(SubcaseError::Parameters { .. })));
        assert!(matches!(subcase_check(13, 7, 3), Err(SubcaseError::Parameters { .. })));
    }

    #[test]
    fn perturbed_display_is_detected() {
        let (g, p) = six_cell_instance(13, 7, 2).unwrap();
        let q = quotient_matrix(&g, &p, MatrixKind::Adjacency).unwrap();
        assert_ne!(char_poly(&q), phi_b(13, 7, 3));
        assert_ne!(char_poly(&q), phi_b(14, 7, 2));
    }

    #[test]
    fn half_case() {
        for (n, d) in [(11, 7), (13, 7), (13, 9), (15, 9), (21, 13)] {
            let c = half_case_check(n, d).unwrap();
            assert!(c.quotient_matches, "{c:?}");
            assert!(c.below_bound, "{c:?}");
        }
        assert!(half_case_check(13, 8).is_err());
        assert!(half_case_check(8, 7).is_err());
    }
}
