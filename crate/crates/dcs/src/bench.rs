//! Benchmark harness: generate each planned instance, solve it, record wall
//! time and the solver's work counters as one CSV row.
//!
//! Plan format, one cell per line:
//!
//! ```text
//! # family n m k seed algorithm [key=value ...]
//! timeout 30000                       # per-cell limit in ms, default 60000
//! cell planted 10000 100000 4 1 fast
//! cell uniform 50 200 3 7 naive bounds=-5:5 values=0:20
//! cell planted 100 400 8 2 fast order=random:3 slack=4
//! ```

use std::sync::atomic::AtomicBool;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use dcs_core::{
    generate, solve_fast_with, solve_naive_with, Family, GenConfig, Policy, SolveError,
    SolveOptions, SolveOutcome, SolveStats,
};

use crate::format::ParseDiagnostic;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

pub const CSV_HEADER: [&str; 12] = [
    "family",
    "n",
    "m",
    "k",
    "seed",
    "algorithm",
    "outcome",
    "wall_time",
    "removals",
    "scans",
    "walk_steps",
    "updates",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Fast(Policy),
    Naive,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Fast(policy) => write!(f, "fast:{policy}"),
            Algorithm::Naive => f.write_str("naive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub config: GenConfig,
    pub algorithm: Algorithm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub cells: Vec<Cell>,
    pub timeout: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellOutcome {
    Feasible,
    Infeasible,
    Timeout,
}

impl CellOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            CellOutcome::Feasible => "feasible",
            CellOutcome::Infeasible => "infeasible",
            CellOutcome::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub outcome: CellOutcome,
    /// Nanoseconds spent in the solver, at least 1.
    pub wall_time: u128,
    /// Present for completed fast-solver cells.
    pub stats: Option<SolveStats>,
}

impl BenchRow {
    pub fn record(&self) -> [String; 12] {
        let counter = |f: fn(&SolveStats) -> u64| {
            self.stats
                .as_ref()
                .map(|s| f(s).to_string())
                .unwrap_or_default()
        };
        [
            self.family.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.k.to_string(),
            self.seed.to_string(),
            self.algorithm.to_string(),
            self.outcome.as_str().to_string(),
            self.wall_time.to_string(),
            counter(|s| s.removals),
            counter(|s| s.scans),
            counter(|s| s.walk_steps),
            counter(|s| s.updates),
        ]
    }
}

#[derive(Debug)]
pub enum BenchError {
    Generate {
        cell: usize,
        error: dcs_core::GenError,
    },
    Csv(csv::Error),
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Generate { cell, error } => write!(f, "cell {}: {error}", cell + 1),
            BenchError::Csv(e) => write!(f, "writing CSV: {e}"),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<csv::Error> for BenchError {
    fn from(e: csv::Error) -> Self {
        BenchError::Csv(e)
    }
}

pub fn parse_policy(text: &str) -> Option<Policy> {
    match text {
        "lifo" => Some(Policy::Lifo),
        "fifo" => Some(Policy::Fifo),
        _ => text
            .strip_prefix("random:")?
            .parse()
            .ok()
            .map(Policy::Random),
    }
}

fn parse_range(text: &str) -> Option<(i64, i64)> {
    // split on the ':' that follows the first number, so "-5:-1" works
    let at = text.get(1..)?.find(':')? + 1;
    Some((text[..at].parse().ok()?, text[at + 1..].parse().ok()?))
}

pub fn parse_plan(text: &str) -> Result<Plan, Vec<ParseDiagnostic>> {
    let mut diagnostics = Vec::new();
    let mut cells = Vec::new();
    let mut timeout = DEFAULT_TIMEOUT;
    let mut error = |line: usize, message: String| {
        diagnostics.push(ParseDiagnostic {
            line,
            column: 0,
            message,
            severity: crate::format::Severity::Error,
        })
    };

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let tokens: Vec<&str> = raw
            .split('#')
            .next()
            .unwrap_or("")
            .split_whitespace()
            .collect();
        match tokens.as_slice() {
            [] => {}
            ["timeout", ms] => match ms.parse() {
                Ok(ms) => timeout = Duration::from_millis(ms),
                Err(_) => error(line, format!("bad timeout `{ms}`")),
            },
            ["cell", family, n, m, k, seed, algorithm, options @ ..] => {
                let Ok(family) = family.parse::<Family>() else {
                    error(line, format!("unknown family `{family}`"));
                    continue;
                };
                let (Ok(n), Ok(m), Ok(k), Ok(seed)) =
                    (n.parse(), m.parse(), k.parse(), seed.parse())
                else {
                    error(
                        line,
                        "n, m, k and seed must be non-negative integers".into(),
                    );
                    continue;
                };
                let mut config = GenConfig::new(family, n, m, k, seed);
                let mut policy = Policy::Lifo;
                let mut ok = true;
                for option in options {
                    let parsed = match option.split_once('=') {
                        Some(("bounds", r)) => parse_range(r).map(|r| config.bound_range = r),
                        Some(("values", r)) => parse_range(r).map(|r| config.domain_range = r),
                        Some(("slack", s)) => s.parse().ok().map(|s| config.slack_max = s),
                        Some(("order", o)) => parse_policy(o).map(|p| policy = p),
                        _ => None,
                    };
                    if parsed.is_none() {
                        error(line, format!("bad option `{option}`"));
                        ok = false;
                    }
                }
                let algorithm = match *algorithm {
                    "fast" => Algorithm::Fast(policy),
                    "naive" => Algorithm::Naive,
                    other => {
                        error(line, format!("unknown algorithm `{other}`"));
                        continue;
                    }
                };
                if let Err(e) = config.validate() {
                    error(line, e.to_string());
                    continue;
                }
                if ok {
                    cells.push(Cell { config, algorithm });
                }
            }
            [directive, ..] => error(line, format!("unknown plan line `{directive}`")),
        }
    }
    if cells.is_empty() && diagnostics.is_empty() {
        diagnostics.push(ParseDiagnostic {
            line: text.lines().count().max(1),
            column: 0,
            message: "plan has no cells".into(),
            severity: crate::format::Severity::Error,
        });
    }
    if diagnostics.is_empty() {
        Ok(Plan { cells, timeout })
    } else {
        Err(diagnostics)
    }
}

/// Solves `cell` with a watchdog that cancels the solve after `timeout`.
fn run_cell(index: usize, cell: &Cell, timeout: Duration) -> Result<BenchRow, BenchError> {
    let instance =
        generate(&cell.config).map_err(|error| BenchError::Generate { cell: index, error })?;
    let cancel = AtomicBool::new(false);
    let cancel = &cancel;
    let (done, finished) = mpsc::channel::<()>();

    let (result, elapsed) = thread::scope(|scope| {
        scope.spawn(move || {
            if finished.recv_timeout(timeout).is_err() {
                cancel.store(true, std::sync::atomic::Ordering::Relaxed);
            }
        });
        let start = Instant::now();
        let result: Option<(SolveOutcome, Option<SolveStats>)> = match cell.algorithm {
            Algorithm::Fast(policy) => {
                let options = SolveOptions {
                    policy,
                    debug_invariants: false,
                    cancel: Some(cancel),
                };
                match solve_fast_with(&instance.system, &instance.domain, &options) {
                    Ok((outcome, stats)) => Some((outcome, Some(stats))),
                    Err(SolveError::Cancelled) => None,
                    Err(SolveError::Invariant(v)) => unreachable!("invariant checks are off: {v}"),
                }
            }
            Algorithm::Naive => solve_naive_with(&instance.system, &instance.domain, Some(cancel))
                .map(|o| (o, None)),
        };
        let elapsed = start.elapsed();
        let _ = done.send(());
        (result, elapsed)
    });

    let (outcome, stats) = match result {
        Some((outcome, stats)) if outcome.is_feasible() => (CellOutcome::Feasible, stats),
        Some((_, stats)) => (CellOutcome::Infeasible, stats),
        None => (CellOutcome::Timeout, None),
    };
    let config = &cell.config;
    Ok(BenchRow {
        family: config.family,
        n: config.n,
        m: config.m,
        k: config.k,
        seed: config.seed,
        algorithm: cell.algorithm,
        outcome,
        wall_time: elapsed.as_nanos().max(1),
        stats,
    })
}

/// Runs every cell in plan order.
pub fn run_bench(plan: &Plan) -> Result<Vec<BenchRow>, BenchError> {
    plan.cells
        .iter()
        .enumerate()
        .map(|(i, cell)| run_cell(i, cell, plan.timeout))
        .collect()
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}
