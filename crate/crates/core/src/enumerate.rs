//! Isomorph-free generation by vertex augmentation.
//!
//! Level `k` is built from the representatives of level `k − 1`: every
//! parent gets a new vertex with each of the `2^(k−1)` possible
//! neighborhoods, children failing the predicate are dropped, and the rest
//! are deduplicated by canonical form. Wheel-freeness is closed under vertex
//! deletion, so every wheel-free graph of order `k` has a wheel-free parent
//! and pruning by the predicate loses nothing. Connectivity is not
//! hereditary; it is applied at the target order only.
//!
//! Parents are expanded in parallel, but new forms are merged in (parent
//! index, neighborhood mask) order, so the output never depends on the
//! thread count.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{Graph, VertexSet};
use crate::graph6::{from_graph6, Graph6Error};
use crate::wheel::{extension_stays_wheel_free, is_wheel_free, neighborhood_components};

/// Orders above this need [`GeneratorConfig::allow_large`].
pub const SOFT_MAX_ORDER: usize = 10;
pub const HARD_MAX_ORDER: usize = 12;

/// Parents expanded between budget checks and checkpoints.
const CHUNK: usize = 64;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("order {0} is outside 1..={HARD_MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("order {0} is above {SOFT_MAX_ORDER}; pass the large-order opt-in to run it")]
    NeedsOptIn(usize),
    #[error("unknown predicate {0:?} (expected all, wheel_free or connected_wheel_free)")]
    UnknownPredicate(String),
    #[error("checkpoint is malformed: {0}")]
    BadCheckpoint(String),
    #[error("spool line {line}: {source}")]
    BadSpool { line: usize, source: Graph6Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    All,
    WheelFree,
    ConnectedWheelFree,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::All => "all",
            Predicate::WheelFree => "wheel_free",
            Predicate::ConnectedWheelFree => "connected_wheel_free",
        }
    }

    pub fn accepts(self, g: &Graph) -> bool {
        match self {
            Predicate::All => true,
            Predicate::WheelFree => is_wheel_free(g),
            Predicate::ConnectedWheelFree => is_wheel_free(g) && g.is_connected(),
        }
    }

    fn wheel_free(self) -> bool {
        self != Predicate::All
    }
}

impl FromStr for Predicate {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Predicate::All),
            "wheel_free" | "wheel-free" => Ok(Predicate::WheelFree),
            "connected_wheel_free" | "connected-wheel-free" => Ok(Predicate::ConnectedWheelFree),
            _ => Err(EnumerationError::UnknownPredicate(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Budget {
    pub max_seconds: Option<f64>,
    /// Cap on graphs emitted at the target order.
    pub max_graphs: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    fn out_of_time(&self, start: Instant) -> bool {
        self.max_seconds
            .is_some_and(|s| start.elapsed() >= Duration::from_secs_f64(s.max(0.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub predicate: Predicate,
    pub budget: Budget,
    pub allow_large: bool,
}

impl GeneratorConfig {
    pub fn new(n: usize, predicate: Predicate) -> Self {
        GeneratorConfig {
            n,
            predicate,
            budget: Budget::unlimited(),
            allow_large: false,
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn allow_large(mut self, allow: bool) -> Self {
        self.allow_large = allow;
        self
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        if self.n == 0 || self.n > HARD_MAX_ORDER {
            return Err(EnumerationError::OrderOutOfRange(self.n));
        }
        if self.n > SOFT_MAX_ORDER && !self.allow_large {
            return Err(EnumerationError::NeedsOptIn(self.n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Progress {
    pub order: usize,
    pub parents_done: usize,
    pub parents_total: usize,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub n: usize,
    pub predicate: Predicate,
    /// Canonical representatives at the target order, in generation order.
    pub forms: Vec<CanonicalForm>,
    /// Classes found at each order `1..=n`; only the last may be partial.
    pub level_counts: Vec<usize>,
    pub exhaustive: bool,
}

impl Enumeration {
    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.forms.iter().map(CanonicalForm::to_graph)
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// New canonical children of one parent, in mask order. `last` marks the
/// target order, where connectivity is enforced.
fn children(parent: &Graph, predicate: Predicate, last: bool) -> Vec<CanonicalForm> {
    let k = parent.order();
    let connected = last && predicate == Predicate::ConnectedWheelFree;
    let components = if predicate.wheel_free() {
        neighborhood_components(parent)
    } else {
        Vec::new()
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << k {
        if connected && mask == 0 {
            continue;
        }
        if predicate.wheel_free() && !extension_stays_wheel_free(parent, &components, mask) {
            continue;
        }
        let child = parent
            .add_vertex(VertexSet(mask))
            .expect("orders stay within the canonical cap");
        if connected && !child.is_connected() {
            continue;
        }
        let form = canonical_form(&child).expect("orders stay within the canonical cap");
        if seen.insert(form) {
            out.push(form);
        }
    }
    out
}

fn single_vertex() -> CanonicalForm {
    canonical_form(&Graph::empty(1).expect("order 1")).expect("order 1")
}

/// Every representative of order `n − 1` under the hereditary part of the
/// predicate; these are the parents of the target level.
fn parent_level(
    n: usize,
    predicate: Predicate,
    budget: &Budget,
    start: Instant,
    progress: Option<&(dyn Fn(Progress) + Sync)>,
    level_counts: &mut Vec<usize>,
) -> Option<Vec<CanonicalForm>> {
    let hereditary = if predicate == Predicate::All {
        Predicate::All
    } else {
        Predicate::WheelFree
    };
    let mut level = vec![single_vertex()];
    level_counts.push(1);
    for k in 2..n {
        let (next, complete) = expand(&level, hereditary, false, k, budget, start, progress, None);
        if !complete {
            return None;
        }
        level = next;
        level_counts.push(level.len());
    }
    Some(level)
}

#[allow(clippy::too_many_arguments)]
fn expand(
    parents: &[CanonicalForm],
    predicate: Predicate,
    last: bool,
    order: usize,
    budget: &Budget,
    start: Instant,
    progress: Option<&(dyn Fn(Progress) + Sync)>,
    cap: Option<usize>,
) -> (Vec<CanonicalForm>, bool) {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (c, chunk) in parents.chunks(CHUNK).enumerate() {
        if budget.out_of_time(start) {
            return (out, false);
        }
        let batches: Vec<Vec<CanonicalForm>> = chunk
            .par_iter()
            .map(|f| children(&f.to_graph(), predicate, last))
            .collect();
        for form in batches.into_iter().flatten() {
            if seen.insert(form) {
                if cap.is_some_and(|m| out.len() >= m) {
                    return (out, false);
                }
                out.push(form);
            }
        }
        if let Some(report) = progress {
            report(Progress {
                order,
                parents_done: (c * CHUNK + chunk.len()).min(parents.len()),
                parents_total: parents.len(),
            });
        }
    }
    (out, true)
}

pub fn enumerate_graphs(config: &GeneratorConfig) -> Result<Enumeration, EnumerationError> {
    enumerate_with_progress(config, None)
}

pub fn enumerate_with_progress(
    config: &GeneratorConfig,
    progress: Option<&(dyn Fn(Progress) + Sync)>,
) -> Result<Enumeration, EnumerationError> {
    config.validate()?;
    let start = Instant::now();
    let n = config.n;
    let mut level_counts = Vec::new();
    let done = |forms: Vec<CanonicalForm>, level_counts: Vec<usize>, exhaustive| Enumeration {
        n,
        predicate: config.predicate,
        forms,
        level_counts,
        exhaustive,
    };
    if n == 1 {
        let forms = vec![single_vertex()];
        let exhaustive = config.budget.max_graphs != Some(0);
        let forms = if exhaustive { forms } else { Vec::new() };
        let counts = vec![forms.len()];
        return Ok(done(forms, counts, exhaustive));
    }
    let Some(parents) = parent_level(n, config.predicate, &config.budget, start, progress, &mut level_counts) else {
        return Ok(done(Vec::new(), level_counts, false));
    };
    let (forms, complete) = expand(
        &parents,
        config.predicate,
        true,
        n,
        &config.budget,
        start,
        progress,
        config.budget.max_graphs,
    );
    level_counts.push(forms.len());
    Ok(done(forms, level_counts, complete))
}

pub fn enumerate_wheel_free(n: usize) -> Result<Enumeration, EnumerationError> {
    enumerate_graphs(&GeneratorConfig::new(n, Predicate::WheelFree))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpoolReport {
    pub n: usize,
    pub predicate: Predicate,
    /// Graphs in the spool file after this run.
    pub written: usize,
    /// Parent index the run resumed after, if a checkpoint was found.
    pub resumed_after: Option<usize>,
    pub exhaustive: bool,
}

fn read_checkpoint(path: &Path) -> Result<Option<(usize, usize)>, EnumerationError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let nums: Vec<usize> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| EnumerationError::BadCheckpoint(e.to_string()))?;
    match nums[..] {
        [order, index] => Ok(Some((order, index))),
        _ => Err(EnumerationError::BadCheckpoint(format!(
            "expected two lines, found {}",
            nums.len()
        ))),
    }
}

fn write_checkpoint(path: &Path, order: usize, index: usize) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{order}\n{index}\n"))?;
    fs::rename(tmp, path)
}

/// Complete lines of an existing spool; a torn last line is cut off.
fn load_spool(path: &Path) -> Result<Vec<CanonicalForm>, EnumerationError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut forms = Vec::new();
    let mut kept_bytes = 0u64;
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    while reader.read_line(&mut line)? > 0 {
        if !line.ends_with('\n') {
            break;
        }
        let g = from_graph6(line.trim_end()).map_err(|source| EnumerationError::BadSpool {
            line: forms.len() + 1,
            source,
        })?;
        forms.push(canonical_form(&g).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?);
        kept_bytes += line.len() as u64;
        line.clear();
    }
    OpenOptions::new().write(true).open(path)?.set_len(kept_bytes)?;
    Ok(forms)
}

/// Writes the target level as newline-delimited graph6, checkpointing the
/// last completed parent index after every chunk. A later call with the same
/// paths resumes from the checkpoint and produces the same file as an
/// uninterrupted run.
pub fn spool_enumeration(
    config: &GeneratorConfig,
    out_path: &Path,
    checkpoint_path: &Path,
) -> Result<SpoolReport, EnumerationError> {
    config.validate()?;
    let start = Instant::now();
    let n = config.n;
    let checkpoint = read_checkpoint(checkpoint_path)?;
    let resumed_after = match checkpoint {
        Some((order, index)) if order == n => Some(index),
        Some((order, _)) => {
            return Err(EnumerationError::BadCheckpoint(format!(
                "checkpoint is for order {order}, not {n}"
            )))
        }
        None => None,
    };
    let existing = if resumed_after.is_some() {
        load_spool(out_path)?
    } else {
        File::create(out_path)?;
        Vec::new()
    };
    let mut seen: HashSet<CanonicalForm> = existing.iter().copied().collect();
    let mut written = existing.len();
    let mut out = OpenOptions::new().append(true).open(out_path)?;
    let report = |written, exhaustive| SpoolReport {
        n,
        predicate: config.predicate,
        written,
        resumed_after,
        exhaustive,
    };

    let parents = if n == 1 {
        Vec::new()
    } else {
        match parent_level(n, config.predicate, &config.budget, start, None, &mut Vec::new()) {
            Some(p) => p,
            None => return Ok(report(written, false)),
        }
    };
    if n == 1 {
        if written == 0 {
            writeln!(out, "{}", single_vertex().to_graph6())?;
            written = 1;
        }
        write_checkpoint(checkpoint_path, 1, 0)?;
        return Ok(report(written, true));
    }
    let first = resumed_after.map_or(0, |i| i + 1);
    let mut index = first;
    while index < parents.len() {
        if config.budget.out_of_time(start) {
            return Ok(report(written, false));
        }
        let end = (index + CHUNK).min(parents.len());
        let batches: Vec<Vec<CanonicalForm>> = parents[index..end]
            .par_iter()
            .map(|f| children(&f.to_graph(), config.predicate, true))
            .collect();
        let mut text = String::new();
        for form in batches.into_iter().flatten() {
            if seen.insert(form) {
                if config.budget.max_graphs.is_some_and(|m| written >= m) {
                    out.write_all(text.as_bytes())?;
                    out.flush()?;
                    return Ok(report(written, false));
                }
                text.push_str(&form.to_graph6());
                text.push('\n');
                written += 1;
            }
        }
        out.write_all(text.as_bytes())?;
        out.flush()?;
        write_checkpoint(checkpoint_path, n, end - 1)?;
        index = end;
    }
    Ok(report(written, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, p: Predicate) -> usize {
        enumerate_graphs(&GeneratorConfig::new(n, p)).unwrap().len()
    }

    #[test]
    fn small_counts() {
        let all: Vec<usize> = (1..=6).map(|n| count(n, Predicate::All)).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        assert_eq!(count(4, Predicate::WheelFree), 10);
        // connected graphs on 4 vertices: 6, all but K_4 wheel-free
        assert_eq!(count(4, Predicate::ConnectedWheelFree), 5);
        assert_eq!(count(1, Predicate::ConnectedWheelFree), 1);
    }

    #[test]
    fn outputs_satisfy_predicate_and_are_distinct() {
        for p in [Predicate::WheelFree, Predicate::ConnectedWheelFree] {
            let e = enumerate_graphs(&GeneratorConfig::new(6, p)).unwrap();
            assert!(e.exhaustive);
            assert!(e.graphs().all(|g| p.accepts(&g)));
            let distinct: HashSet<_> = e.forms.iter().collect();
            assert_eq!(distinct.len(), e.len());
        }
        let e = enumerate_wheel_free(5).unwrap();
        let h5 = canonical_form(&Graph::h_n(5).unwrap()).unwrap();
        assert!(e.forms.contains(&h5));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let config = GeneratorConfig::new(7, Predicate::WheelFree);
        let base = enumerate_graphs(&config).unwrap().forms;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| enumerate_graphs(&config).unwrap().forms);
        assert_eq!(base, single);
    }

    #[test]
    fn budgets_flag_partial_results() {
        let config = GeneratorConfig::new(6, Predicate::All).with_budget(Budget {
            max_seconds: None,
            max_graphs: Some(10),
        });
        let e = enumerate_graphs(&config).unwrap();
        assert!(!e.exhaustive);
        assert_eq!(e.len(), 10);
        let config = GeneratorConfig::new(6, Predicate::All).with_budget(Budget {
            max_seconds: Some(0.0),
            max_graphs: None,
        });
        assert!(!enumerate_graphs(&config).unwrap().exhaustive);
    }

    #[test]
    fn order_policy() {
        assert!(matches!(
            enumerate_wheel_free(0),
            Err(EnumerationError::OrderOutOfRange(0))
        ));
        assert!(matches!(enumerate_wheel_free(11), Err(EnumerationError::NeedsOptIn(11))));
        assert!(matches!(
            enumerate_graphs(&GeneratorConfig::new(13, Predicate::All).allow_large(true)),
            Err(EnumerationError::OrderOutOfRange(13))
        ));
        assert!("bogus".parse::<Predicate>().is_err());
        assert_eq!("wheel-free".parse::<Predicate>().unwrap(), Predicate::WheelFree);
    }

    #[test]
    fn level_counts_track_each_order() {
        let e = enumerate_graphs(&GeneratorConfig::new(5, Predicate::All)).unwrap();
        assert_eq!(e.level_counts, vec![1, 2, 4, 11, 34]);
    }
}
