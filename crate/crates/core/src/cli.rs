//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 a budget ran out before the work was exhaustive.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::enumerate::{enumerate_with_progress, spool_enumeration, Budget, GeneratorConfig, Predicate, Progress};
use crate::graph::{Graph, VertexSet};
use crate::graph6::{from_graph6, to_graph6};
use crate::partition::{char_poly, coarsest_equitable, lemma1_check, quotient_matrix, Partition};
use crate::search::{max_spectral_radius, SearchReport, verify_theorem1, verify_theorem2, TheoremVerdict, DEFAULT_TIE_TOL};
use crate::spectral::{
    closed_form_rho_a_hn_label, closed_form_rho_q_label, row_sum_bounds, spectral_radius, MatrixKind, DEFAULT_TOL,
};
use crate::subcase::{half_case_check, subcase_check};
use crate::table::{emit_table, format_sig10, round_sig10, table_rows, TableFormat};
use crate::wheel::{check_fact2, find_wheel_witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wheelfree", version, about = "Spectral extremal problems for wheel-free graphs")]
pub struct Cli {
    /// Worker threads; 0 or unset uses all available cores.
    #[arg(long, global = true, env = "WHEELFREE_THREADS")]
    pub threads: Option<usize>,
    /// Wall-clock budget for enumeration-backed commands.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Cap on graphs generated at the target order.
    #[arg(long, global = true)]
    pub max_graphs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixArg {
    #[value(alias = "adjacency")]
    A,
    #[value(alias = "signless-laplacian")]
    Q,
}

impl MatrixArg {
    fn kind(self) -> MatrixKind {
        match self {
            MatrixArg::A => MatrixKind::Adjacency,
            MatrixArg::Q => MatrixKind::SignlessLaplacian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hn,
    F,
    Complete,
    Path,
    Cycle,
    Wheel,
    Star,
    Empty,
    K2Join,
    MatchingJoin,
    Gab,
    Gabcd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PredicateArg {
    All,
    WheelFree,
    ConnectedWheelFree,
}

impl PredicateArg {
    fn predicate(self) -> Predicate {
        match self {
            PredicateArg::All => Predicate::All,
            PredicateArg::WheelFree => Predicate::WheelFree,
            PredicateArg::ConnectedWheelFree => Predicate::ConnectedWheelFree,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// graph6 file, one graph per line; standard input when absent or `-`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named graph.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        singles: Option<usize>,
        #[arg(long)]
        independent: Option<usize>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Wheel-freeness, a wheel witness, and common-neighborhood violations.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Spectral radius and Perron vector.
    Spectra {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "a")]
        matrix: MatrixArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Equitable quotient, its characteristic polynomial, and the radius check.
    Quotient {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "a")]
        matrix: MatrixArg,
        /// Explicit cells such as `0,1;2,3,4`; the coarsest equitable
        /// partition is used otherwise.
        #[arg(long)]
        cells: Option<String>,
        /// Check the six-cell polynomial at (n, d_u, b) instead of reading graphs.
        #[arg(long, num_args = 3, value_names = ["N", "D_U", "B"], conflicts_with_all = ["cells", "half_case"])]
        subcase: Option<Vec<i64>>,
        /// Check the five-cell b = (d_u-1)/2 quotient at (n, d_u).
        #[arg(long, num_args = 2, value_names = ["N", "D_U"], conflicts_with = "cells")]
        half_case: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Isomorph-free generation.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "wheel-free")]
        predicate: PredicateArg,
        /// Required above order 10.
        #[arg(long)]
        allow_large: bool,
        /// Append graph6 lines to this file, resumable through --checkpoint.
        #[arg(long, requires = "checkpoint")]
        spool: Option<PathBuf>,
        #[arg(long, requires = "spool")]
        checkpoint: Option<PathBuf>,
        /// Report progress on standard error.
        #[arg(long)]
        progress: bool,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Maximum spectral radius over wheel-free graphs of one order.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "a")]
        matrix: MatrixArg,
        #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
        tie_tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check an extremal theorem over a range of orders.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long = "from")]
        from: usize,
        #[arg(long = "to")]
        to: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Regenerate the candidate-graph tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: u8,
        #[arg(long = "from")]
        from: usize,
        #[arg(long = "to")]
        to: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

type CmdResult = Result<Outcome, String>;

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn require_format(format: Format, allowed: &[Format], verb: &str) -> Result<(), String> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<&str> = allowed.iter().map(|f| format_name(*f)).collect();
        Err(format!("{verb} supports --format {}", names.join(" or ")))
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Graph6 => "graph6",
    }
}

fn read_graphs(input: &InputArgs, stdin: &mut dyn BufRead) -> Result<Vec<Graph>, String> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
            s
        }
    };
    let graphs: Vec<Graph> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| from_graph6(l.trim()).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect::<Result<_, _>>()?;
    if graphs.is_empty() {
        return Err("no graphs in input".into());
    }
    Ok(graphs)
}

fn need(name: &str, v: Option<usize>) -> Result<usize, String> {
    v.ok_or_else(|| format!("--{name} is required for this family"))
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: Family,
    n: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    c: Option<usize>,
    d: Option<usize>,
    pairs: Option<usize>,
    singles: Option<usize>,
    independent: Option<usize>,
    format: Format,
) -> CmdResult {
    require_format(format, &[Format::Graph6, Format::Json], "construct")?;
    let g = match family {
        Family::Hn => Graph::h_n(need("n", n)?),
        Family::F => Ok(Graph::f7()),
        Family::Complete => Graph::complete(need("n", n)?),
        Family::Path => Graph::path(need("n", n)?),
        Family::Cycle => Graph::cycle(need("n", n)?),
        Family::Wheel => Graph::wheel(need("n", n)?),
        Family::Star => Graph::star(need("n", n)?.saturating_sub(1)),
        Family::Empty => Graph::empty(need("n", n)?),
        Family::K2Join => Graph::k2_join_independent(need("n", n)?),
        Family::MatchingJoin => Graph::matching_join(
            pairs.unwrap_or(0),
            singles.unwrap_or(0),
            independent.unwrap_or(0),
        ),
        Family::Gab => Graph::g_ab(need("a", a)?, need("b", b)?),
        Family::Gabcd => Graph::g_abcd(need("a", a)?, need("b", b)?, need("c", c)?, need("d", d)?),
    }
    .map_err(|e| e.to_string())?;
    Ok(Outcome::ok(match format {
        Format::Json => pretty(&json!({
            "family": family.to_possible_value().map(|v| v.get_name().to_string()),
            "n": g.order(),
            "edges": g.edge_count(),
            "graph6": to_graph6(&g),
            "wheel_free": crate::wheel::is_wheel_free(&g),
        })),
        _ => format!("{}\n", to_graph6(&g)),
    }))
}

fn check(graphs: &[Graph], format: Format) -> CmdResult {
    require_format(format, &[Format::Json, Format::Csv], "check")?;
    let rows: Vec<_> = graphs
        .iter()
        .map(|g| {
            let witness = find_wheel_witness(g);
            let violations = check_fact2(g);
            json!({
                "graph6": to_graph6(g),
                "n": g.order(),
                "edges": g.edge_count(),
                "connected": g.is_connected(),
                "wheel_free": witness.is_none(),
                "witness": witness,
                "fact2_violations": violations,
            })
        })
        .collect();
    Ok(Outcome::ok(match format {
        Format::Csv => {
            let mut s = String::from("graph6,n,edges,connected,wheel_free,fact2_violations\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r["graph6"].as_str().unwrap_or_default(),
                    r["n"],
                    r["edges"],
                    r["connected"],
                    r["wheel_free"],
                    r["fact2_violations"].as_array().map_or(0, Vec::len),
                ));
            }
            s
        }
        _ => pretty(&rows),
    }))
}

/// Label of the closed form when `g` is the extremal graph for `kind`.
fn closed_form_for(g: &Graph, kind: MatrixKind) -> Option<String> {
    let n = g.order();
    let same = |h: Graph| crate::canon::is_isomorphic(g, &h).unwrap_or(false);
    match kind {
        MatrixKind::Adjacency => Graph::h_n(n).ok().filter(|h| same(h.clone())).and(closed_form_rho_a_hn_label(n)),
        MatrixKind::SignlessLaplacian => Graph::k2_join_independent(n)
            .ok()
            .filter(|h| same(h.clone()))
            .and(closed_form_rho_q_label(n)),
    }
}

fn spectra(graphs: &[Graph], kind: MatrixKind, format: Format) -> CmdResult {
    require_format(format, &[Format::Json, Format::Csv], "spectra")?;
    let mut rows = Vec::new();
    for g in graphs {
        let m = kind.matrix(g);
        let r = spectral_radius(&m, DEFAULT_TOL).map_err(|e| e.to_string())?;
        let (lo, hi) = row_sum_bounds(&m);
        rows.push(json!({
            "graph6": to_graph6(g),
            "n": g.order(),
            "matrix": kind,
            "radius": round_sig10(r.radius),
            "perron": r.perron,
            "residual": r.residual,
            "method": r.method,
            "iterations": r.iterations,
            "min_row_sum": lo,
            "max_row_sum": hi,
            "closed_form": closed_form_for(g, kind),
        }));
    }
    Ok(Outcome::ok(match format {
        Format::Csv => {
            let mut s = String::from("graph6,n,matrix,radius,residual,closed_form\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{:e},{}\n",
                    r["graph6"].as_str().unwrap_or_default(),
                    r["n"],
                    kind.name(),
                    format_sig10(r["radius"].as_f64().unwrap_or(f64::NAN)),
                    r["residual"].as_f64().unwrap_or(f64::NAN),
                    r["closed_form"].as_str().unwrap_or(""),
                ));
            }
            s
        }
        _ => pretty(&rows),
    }))
}

fn parse_cells(n: usize, spec: &str) -> Result<Partition, String> {
    let cells: Vec<VertexSet> = spec
        .split(';')
        .map(|cell| {
            cell.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|e| format!("bad vertex {v:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()
                .and_then(|vs| {
                    if let Some(&v) = vs.iter().find(|&&v| v >= 64) {
                        Err(format!("vertex {v} out of range"))
                    } else {
                        Ok(VertexSet::from_vertices(vs))
                    }
                })
        })
        .collect::<Result<_, _>>()?;
    Partition::new(n, cells).map_err(|e| e.to_string())
}

fn quotient(graphs: &[Graph], kind: MatrixKind, cells: Option<&str>) -> CmdResult {
    let mut rows = Vec::new();
    for g in graphs {
        let p = match cells {
            Some(spec) => parse_cells(g.order(), spec)?,
            None => coarsest_equitable(g, kind),
        };
        let q = quotient_matrix(g, &p, kind).map_err(|e| e.to_string())?;
        let poly = char_poly(&q);
        let k = q.dim();
        let entries: Vec<Vec<String>> = (0..k)
            .map(|i| (0..k).map(|j| q.get(i, j).to_string()).collect())
            .collect();
        let lemma1 = if g.is_connected() {
            Some(lemma1_check(g, &p, kind, 1e-9).map_err(|e| e.to_string())?)
        } else {
            None
        };
        rows.push(json!({
            "graph6": to_graph6(g),
            "matrix": kind,
            "cells": p.cells().iter().map(|c| c.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
            "quotient": entries,
            "char_poly": poly.to_string(),
            "coefficients": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "lemma1": lemma1,
        }));
    }
    let failed = rows.iter().any(|r| r["lemma1"]["holds"] == json!(false));
    Ok(Outcome {
        text: pretty(&rows),
        code: if failed { EXIT_FAIL } else { EXIT_OK },
    })
}

fn subcase(params: &[i64]) -> CmdResult {
    let c = subcase_check(params[0], params[1], params[2]).map_err(|e| e.to_string())?;
    Ok(Outcome {
        code: if c.holds { EXIT_OK } else { EXIT_FAIL },
        text: pretty(&c),
    })
}

fn half_case(params: &[i64]) -> CmdResult {
    let c = half_case_check(params[0], params[1]).map_err(|e| e.to_string())?;
    Ok(Outcome {
        code: if c.quotient_matches && c.below_bound { EXIT_OK } else { EXIT_FAIL },
        text: pretty(&c),
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    n: usize,
    predicate: Predicate,
    allow_large: bool,
    spool: Option<&Path>,
    checkpoint: Option<&Path>,
    progress: bool,
    format: Format,
    budget: Budget,
    err: &mut dyn Write,
) -> CmdResult {
    require_format(format, &[Format::Graph6, Format::Json], "enumerate")?;
    let config = GeneratorConfig::new(n, predicate)
        .with_budget(budget)
        .allow_large(allow_large);
    if let (Some(spool), Some(checkpoint)) = (spool, checkpoint) {
        let report = spool_enumeration(&config, spool, checkpoint).map_err(|e| e.to_string())?;
        return Ok(Outcome {
            code: if report.exhaustive { EXIT_OK } else { EXIT_BUDGET },
            text: pretty(&report),
        });
    }
    let lines = std::sync::Mutex::new(Vec::new());
    let report_progress = |p: Progress| {
        lines.lock().expect("progress lock").push(format!(
            "order {}: {}/{} parents",
            p.order, p.parents_done, p.parents_total
        ));
    };
    let e = enumerate_with_progress(&config, progress.then_some(&report_progress as &(dyn Fn(Progress) + Sync)))
        .map_err(|e| e.to_string())?;
    for line in lines.into_inner().expect("progress lock") {
        let _ = writeln!(err, "{line}");
    }
    let code = if e.exhaustive { EXIT_OK } else { EXIT_BUDGET };
    let text = match format {
        Format::Json => pretty(&json!({
            "n": e.n,
            "predicate": e.predicate,
            "count": e.len(),
            "exhaustive": e.exhaustive,
            "level_counts": e.level_counts,
            "graphs": e.forms.iter().map(|f| f.to_graph6()).collect::<Vec<_>>(),
        })),
        _ => e.forms.iter().map(|f| f.to_graph6() + "\n").collect(),
    };
    Ok(Outcome { text, code })
}

fn search(n: usize, kind: MatrixKind, tie_tol: f64, format: Format, budget: Budget) -> CmdResult {
    require_format(format, &[Format::Json, Format::Csv], "search")?;
    let r = max_spectral_radius(n, kind, tie_tol, budget).map_err(|e| e.to_string())?;
    let code = if r.exhaustive { EXIT_OK } else { EXIT_BUDGET };
    let text = match format {
        Format::Csv => format!(
            "n,kind,max_radius,extremal,class_count,exhaustive\n{},{},{},{},{},{}\n",
            r.n,
            r.kind.name(),
            format_sig10(r.max_radius),
            r.extremal.join(";"),
            r.class_count,
            r.exhaustive
        ),
        _ => pretty(&SearchReport {
            max_radius: round_sig10(r.max_radius),
            ..r
        }),
    };
    Ok(Outcome { text, code })
}

fn verdicts_csv(verdicts: &[TheoremVerdict]) -> String {
    let mut s = String::from("theorem,n,pass,max_radius,closed_form,extremal,class_count,exhaustive\n");
    for v in verdicts {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            v.theorem,
            v.n,
            if v.pass { "PASS" } else { "FAIL" },
            format_sig10(v.max_radius),
            format_sig10(v.closed_form),
            v.extremal.join(";"),
            v.class_count,
            v.exhaustive
        ));
    }
    s
}

fn verify(theorem: u8, from: usize, to: usize, format: Format, budget: Budget) -> CmdResult {
    require_format(format, &[Format::Json, Format::Csv], "verify")?;
    let verdicts = match theorem {
        1 => verify_theorem1(from, to, budget),
        _ => verify_theorem2(from, to, budget),
    }
    .map_err(|e| e.to_string())?;
    let code = if verdicts.iter().any(|v| !v.exhaustive) {
        EXIT_BUDGET
    } else if verdicts.iter().all(|v| v.pass) {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    #[derive(Serialize)]
    struct Row {
        verdict: &'static str,
        #[serde(flatten)]
        inner: TheoremVerdict,
    }
    let text = match format {
        Format::Csv => verdicts_csv(&verdicts),
        _ => pretty(
            &verdicts
                .iter()
                .map(|v| Row {
                    verdict: if v.pass { "PASS" } else { "FAIL" },
                    inner: TheoremVerdict {
                        max_radius: round_sig10(v.max_radius),
                        closed_form: round_sig10(v.closed_form),
                        ..v.clone()
                    },
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome { text, code })
}

fn table(which: u8, from: usize, to: usize, format: Format) -> CmdResult {
    require_format(format, &[Format::Csv, Format::Json], "table")?;
    if from > to {
        return Err(format!("empty range {from}..={to}"));
    }
    let mut rows = Vec::new();
    for n in from..=to {
        rows.extend(table_rows(which, n).map_err(|e| e.to_string())?);
    }
    let format = if format == Format::Json { TableFormat::Json } else { TableFormat::Csv };
    Ok(Outcome::ok(emit_table(&rows, format)))
}

fn execute(cli: Cli, stdin: &mut (dyn BufRead + Send), err: &mut (dyn Write + Send)) -> CmdResult {
    let budget = Budget {
        max_seconds: cli.max_seconds,
        max_graphs: cli.max_graphs,
    };
    match cli.command {
        Command::Construct {
            family,
            n,
            a,
            b,
            c,
            d,
            pairs,
            singles,
            independent,
            format,
        } => construct(family, n, a, b, c, d, pairs, singles, independent, format),
        Command::Check { input, format } => check(&read_graphs(&input, stdin)?, format),
        Command::Spectra { input, matrix, format } => spectra(&read_graphs(&input, stdin)?, matrix.kind(), format),
        Command::Quotient {
            input,
            matrix,
            cells,
            subcase: sub,
            half_case: half,
            format,
        } => {
            require_format(format, &[Format::Json], "quotient")?;
            if let Some(params) = sub {
                subcase(&params)
            } else if let Some(params) = half {
                half_case(&params)
            } else {
                quotient(&read_graphs(&input, stdin)?, matrix.kind(), cells.as_deref())
            }
        }
        Command::Enumerate {
            n,
            predicate,
            allow_large,
            spool,
            checkpoint,
            progress,
            format,
        } => enumerate(
            n,
            predicate.predicate(),
            allow_large,
            spool.as_deref(),
            checkpoint.as_deref(),
            progress,
            format,
            budget,
            err,
        ),
        Command::Search {
            n,
            matrix,
            tie_tol,
            format,
        } => search(n, matrix.kind(), tie_tol, format, budget),
        Command::Verify { theorem, from, to, format } => verify(theorem, from, to, format, budget),
        Command::Table { table: t, from, to, format } => table(t, from, to, format),
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Reports go to `out` or the `--output` file; diagnostics to
/// `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let output = cli.output.clone();
    // Graph input is small; buffer it so the worker pool owns everything it touches.
    let reads_stdin = match &cli.command {
        Command::Check { input, .. } | Command::Spectra { input, .. } => input.input.is_none(),
        Command::Quotient {
            input,
            subcase,
            half_case,
            ..
        } => subcase.is_none() && half_case.is_none() && input.input.is_none(),
        _ => false,
    } || matches!(&cli.command,
        Command::Check { input, .. } | Command::Spectra { input, .. } | Command::Quotient { input, .. }
            if input.input.as_deref().is_some_and(|p| p.as_os_str() == "-"));
    let mut buffered = Vec::new();
    if reads_stdin {
        if let Err(e) = stdin.read_to_end(&mut buffered) {
            let _ = writeln!(err, "error: cannot read standard input: {e}");
            return EXIT_USAGE;
        }
    }
    let mut local_in = std::io::Cursor::new(buffered);
    let mut local_err = Vec::new();
    let result = pool.install(|| execute(cli, &mut local_in, &mut local_err));
    let _ = err.write_all(&local_err);
    match result {
        Ok(outcome) => {
            let written = match &output {
                Some(path) => fs::write(path, &outcome.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
