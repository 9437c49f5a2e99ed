//! Candidate extremal graphs of the form `(aK_2 ∪ bK_1) ∇ cK_1`, one row per
//! residue of `n mod 4` and admissible degree `d_u`, with their adjacency
//! spectral radii.
//!
//! Table 1 lists `(⌊(d̄+2)/2⌋K_2 ∪ (d̄ mod 2)K_1) ∇ (d_u−1)K_1` with
//! `d̄ = n−1−d_u`; Table 2 lists `(⌊d_u/2⌋K_2 ∪ (d_u mod 2)K_1) ∇ (n−d_u)K_1`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::spectral::{closed_form_rho_a_hn_label, rho_a, SpectralError};
use crate::wheel::is_wheel_free;

pub const COLUMNS: [&str; 5] = ["n", "d_u", "family", "radius", "wheel_free"];

#[derive(Debug, Error)]
pub enum TableError {
    #[error("unknown table {0} (expected 1 or 2)")]
    UnknownTable(u8),
    #[error("order {0} is too small for table rows (need at least 4)")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub d_u: usize,
    pub family: String,
    pub radius: f64,
    pub wheel_free: bool,
    /// Exact form of the radius when the row is `H_n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// `(d_u, pairs, singles, independent)` for each row of the table at order `n`.
fn shapes(table: u8, n: usize) -> Result<Vec<(usize, usize, usize, usize)>, TableError> {
    if n < 4 {
        return Err(TableError::OrderTooSmall(n));
    }
    let degrees: Vec<usize> = match (table, n % 2) {
        (1, 1) => vec![(n + 1) / 2, (n + 3) / 2, (n + 5) / 2],
        (1, _) => vec![(n + 2) / 2, (n + 4) / 2],
        (2, 1) => vec![(n + 1) / 2],
        (2, _) => vec![n / 2, (n + 2) / 2],
        (t, _) => return Err(TableError::UnknownTable(t)),
    };
    Ok(degrees
        .into_iter()
        .filter(|&d| d < n)
        .map(|d| {
            if table == 1 {
                let dbar = n - 1 - d;
                (d, (dbar + 2) / 2, dbar % 2, d - 1)
            } else {
                (d, d / 2, d % 2, n - d)
            }
        })
        .collect())
}

fn family_name(pairs: usize, singles: usize, independent: usize) -> String {
    let left = match (pairs, singles) {
        (0, s) => format!("{s}K_1"),
        (p, 0) => format!("{p}K_2"),
        (p, s) => format!("({p}K_2 ∪ {s}K_1)"),
    };
    format!("{left} ∇ {independent}K_1")
}

pub fn table_rows(table: u8, n: usize) -> Result<Vec<TableRow>, TableError> {
    let shapes = shapes(table, n)?;
    let hn = Graph::h_n(n)?;
    shapes
        .into_iter()
        .map(|(d_u, pairs, singles, independent)| {
            let g = Graph::matching_join(pairs, singles, independent)?;
            // same vertex layout as the H_n constructor
            let is_hn = g == hn;
            Ok(TableRow {
                n,
                d_u,
                family: if is_hn {
                    format!("H_{n}")
                } else {
                    family_name(pairs, singles, independent)
                },
                radius: rho_a(&g)?,
                wheel_free: is_wheel_free(&g),
                closed_form: if is_hn { closed_form_rho_a_hn_label(n) } else { None },
            })
        })
        .collect()
}

/// `x` with ten significant digits, trailing zeros trimmed.
pub fn format_sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:?}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if !s.contains('.') {
        return s;
    }
    let trimmed = s.trim_end_matches('0');
    if trimmed.ends_with('.') {
        format!("{trimmed}0")
    } else {
        trimmed.to_string()
    }
}

/// `x` rounded to the value printed by [`format_sig10`].
pub fn round_sig10(x: f64) -> f64 {
    format_sig10(x).parse().unwrap_or(x)
}

pub fn emit_table(rows: &[TableRow], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = COLUMNS.join(",");
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    r.d_u,
                    r.family,
                    format_sig10(r.radius),
                    r.wheel_free
                ));
            }
            out
        }
        TableFormat::Json => {
            let rounded: Vec<TableRow> = rows
                .iter()
                .map(|r| TableRow {
                    radius: round_sig10(r.radius),
                    ..r.clone()
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rounded).expect("rows serialize");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_hn_rows() {
        let rows = table_rows(1, 11).unwrap();
        assert_eq!(rows.len(), 3);
        let r = &rows[0];
        assert_eq!((r.d_u, r.family.as_str()), (6, "H_11"));
        assert!((r.radius - 6.0).abs() < 1e-10);
        // n ≡ 1: the middle row is H_n
        let rows = table_rows(1, 9).unwrap();
        assert_eq!(rows[1].family, "H_9");
        assert_eq!(rows[0].family, "(2K_2 ∪ 1K_1) ∇ 4K_1");
        for n in 4..=30 {
            for t in [1, 2] {
                let rows = table_rows(t, n).unwrap();
                assert!(rows.iter().all(|r| r.wheel_free));
                assert!(rows.iter().all(|r| r.radius <= crate::spectral::closed_form_rho_a_hn(n).unwrap() + 1e-9));
            }
            assert!(table_rows(1, n).unwrap().iter().any(|r| r.family == format!("H_{n}")), "n={n}");
        }
    }

    #[test]
    fn table2_rows() {
        let rows = table_rows(2, 8).unwrap();
        assert_eq!(rows[0].family, "H_8");
        assert_eq!(rows[0].d_u, 4);
        assert_eq!(format_sig10(rows[0].radius), "4.531128874");
        assert_eq!(table_rows(2, 9).unwrap().len(), 1);
        assert!(matches!(table_rows(3, 9), Err(TableError::UnknownTable(3))));
        assert!(matches!(table_rows(1, 3), Err(TableError::OrderTooSmall(3))));
    }

    #[test]
    fn emitting() {
        assert_eq!(emit_table(&[], TableFormat::Csv), "n,d_u,family,radius,wheel_free\n");
        assert_eq!(emit_table(&[], TableFormat::Json), "[]\n");
        let csv = emit_table(&table_rows(1, 11).unwrap(), TableFormat::Csv);
        assert!(csv.lines().nth(1).unwrap().starts_with("11,6,H_11,6.0,true"));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig10(6.0), "6.0");
        assert_eq!(format_sig10(4.531128874149275), "4.531128874");
        assert_eq!(format_sig10(10.623475382979799), "10.62347538");
        assert_eq!(format_sig10(0.0), "0.0");
    }
}
