//! Command-line front end. [`run`] takes the arguments and output streams so
//! that tests can drive it in-process.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcs_core::oracle::DEFAULT_BRUTE_CAP;
use dcs_core::{
    bellman_ford, brute_force, evaluate, generate, solve_fast_with, solve_naive, timing_to_dcs,
    Assignment, Family, GenConfig, Policy, SolveError, SolveOptions,
};

use crate::bench::{parse_plan, parse_policy, run_bench, write_csv};
use crate::format::{
    parse_outcome, parse_system, parse_timing, serialize_outcome, serialize_record,
    serialize_system, OutcomeRecord, ParseDiagnostic, ParsedSystem,
};

pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Environment variable overriding the brute-force enumeration cap.
pub const BRUTE_CAP_VAR: &str = "DCS_BRUTE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "dcs",
    version,
    about = "Difference constraints over a finite set of values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a system file and print the outcome.
    Solve(SolveArgs),
    /// Check a solution file against a system file.
    Check { system: PathBuf, solution: PathBuf },
    /// Generate an instance and print it in the system format.
    Gen(GenArgs),
    /// Run a benchmark plan and print CSV.
    Bench { plan: PathBuf },
    /// Translate a timing graph into a system file.
    Csdp { timing: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Fast,
    Naive,
    Brute,
    Bf,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// System file, or `-` for stdin.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "fast")]
    algo: Algo,
    /// Worklist order: lifo, fifo or random:<seed>.
    #[arg(long, default_value = "lifo", value_parser = policy_arg)]
    order: Policy,
    /// Print work counters to stderr.
    #[arg(long)]
    stats: bool,
    /// Re-check the solver's loop invariants after every step.
    #[arg(long)]
    debug_invariants: bool,
}

fn policy_arg(text: &str) -> Result<Policy, String> {
    parse_policy(text)
        .ok_or_else(|| format!("expected lifo, fifo or random:<seed>, found `{text}`"))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Uniform,
    Planted,
    RestrictedInfeasible,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Uniform => Family::Uniform,
            FamilyArg::Planted => Family::Planted,
            FamilyArg::RestrictedInfeasible => Family::RestrictedInfeasible,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
    bound_min: i64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    bound_max: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    domain_min: i64,
    #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
    domain_max: i64,
    #[arg(long, default_value_t = 10)]
    slack_max: i64,
}

/// Why a command stopped before producing its artifact.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn diagnostics_failure(source: &Path, diagnostics: &[ParseDiagnostic]) -> Failure {
    let lines: Vec<String> = diagnostics
        .iter()
        .map(|d| format!("{}: {d}", source.display()))
        .collect();
    Failure::input(lines.join("\n"))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map(|_| ())
    };
    read.map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load_system(path: &Path, err: &mut dyn Write) -> Result<ParsedSystem, Failure> {
    let text = read_input(path)?;
    let parsed = parse_system(&text).map_err(|d| diagnostics_failure(path, &d))?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "{}: {w}", path.display());
    }
    Ok(parsed)
}

fn brute_cap() -> Result<u64, Failure> {
    match std::env::var(BRUTE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{BRUTE_CAP_VAR}: not a number: `{v}`"))),
        Err(_) => Ok(DEFAULT_BRUTE_CAP),
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let ParsedSystem { system, domain, .. } = load_system(&args.file, err)?;
    let (text, feasible) = match args.algo {
        Algo::Fast => {
            let options = SolveOptions {
                policy: args.order,
                debug_invariants: args.debug_invariants,
                cancel: None,
            };
            let (outcome, stats) = match solve_fast_with(&system, &domain, &options) {
                Ok(solved) => solved,
                Err(SolveError::Invariant(v)) => {
                    return Err(Failure {
                        code: EXIT_INVARIANT,
                        message: format!("internal error: {v}"),
                    })
                }
                Err(SolveError::Cancelled) => unreachable!("no cancel flag"),
            };
            if args.stats {
                let _ = writeln!(err, "removals {}", stats.removals);
                let _ = writeln!(err, "scans {}", stats.scans);
                let _ = writeln!(err, "walk_steps {}", stats.walk_steps);
                let _ = writeln!(err, "updates {}", stats.updates);
            }
            (serialize_outcome(&outcome, &system), outcome.is_feasible())
        }
        Algo::Naive => {
            let outcome = solve_naive(&system, &domain);
            (serialize_outcome(&outcome, &system), outcome.is_feasible())
        }
        Algo::Brute => {
            let result = brute_force(&system, &domain, brute_cap()?)
                .map_err(|e| Failure::input(e.to_string()))?;
            if args.stats {
                let _ = writeln!(err, "feasible_count {}", result.feasible_count);
            }
            let record = match result.pointwise_max {
                Some(max) => OutcomeRecord::Feasible(max.into_values()),
                None => OutcomeRecord::Infeasible { witness: None },
            };
            (serialize_record(&record), record.is_feasible())
        }
        Algo::Bf => {
            let outcome = bellman_ford(&system);
            let record = OutcomeRecord::from_unrestricted(&outcome, &system);
            (serialize_record(&record), record.is_feasible())
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok(if feasible {
        EXIT_FEASIBLE
    } else {
        EXIT_INFEASIBLE
    })
}

fn cmd_check(
    system_path: &Path,
    solution_path: &Path,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let ParsedSystem { system, domain, .. } = load_system(system_path, err)?;
    let text = read_input(solution_path)?;
    let record = parse_outcome(&text).map_err(|d| diagnostics_failure(solution_path, &d))?;
    let OutcomeRecord::Feasible(values) = record else {
        return Err(Failure::input(format!(
            "{}: not a feasible assignment",
            solution_path.display()
        )));
    };
    if values.len() != system.n() {
        return Err(Failure::input(format!(
            "{}: assigns {} unknowns, the system has {}",
            solution_path.display(),
            values.len(),
            system.n()
        )));
    }
    let assignment = Assignment::new(values);
    if let Err(v) = assignment.restrict_to(&domain) {
        let _ = writeln!(err, "{v} = {} is not in the domain", assignment.value(v));
        return Ok(EXIT_INFEASIBLE);
    }
    let report = evaluate(&system, &assignment);
    if let Some(&p) = report.violated.first() {
        let c = system.constraint(p);
        let _ = writeln!(
            err,
            "constraint {} violated: i={} j={} b={} ({} with {} = {}, {} = {})",
            p + 1,
            c.i.one_based(),
            c.j.one_based(),
            c.b,
            c,
            c.i,
            assignment.value(c.i),
            c.j,
            assignment.value(c.j)
        );
        return Ok(EXIT_INFEASIBLE);
    }
    let _ = writeln!(err, "ok: {} constraints satisfied", report.satisfied_count);
    Ok(EXIT_FEASIBLE)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = GenConfig {
        family: args.family.into(),
        n: args.n,
        m: args.m,
        k: args.k,
        seed: args.seed,
        bound_range: (args.bound_min, args.bound_max),
        domain_range: (args.domain_min, args.domain_max),
        slack_max: args.slack_max,
    };
    let instance = generate(&config).map_err(|e| Failure::input(e.to_string()))?;
    out.write_all(serialize_system(&instance.system, &instance.domain).as_bytes())
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok(EXIT_FEASIBLE)
}

fn cmd_bench(plan_path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_input(plan_path)?;
    let plan = parse_plan(&text).map_err(|d| diagnostics_failure(plan_path, &d))?;
    let rows = run_bench(&plan).map_err(|e| Failure::input(e.to_string()))?;
    write_csv(&rows, out).map_err(|e| Failure::input(e.to_string()))?;
    Ok(EXIT_FEASIBLE)
}

fn cmd_csdp(timing_path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_input(timing_path)?;
    let graph = parse_timing(&text).map_err(|d| diagnostics_failure(timing_path, &d))?;
    let (system, domain) = timing_to_dcs(&graph).map_err(|e| Failure::input(e.to_string()))?;
    out.write_all(serialize_system(&system, &domain).as_bytes())
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok(EXIT_FEASIBLE)
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return EXIT_INPUT;
        }
        Err(e) => {
            // --help and --version
            let _ = write!(out, "{e}");
            return EXIT_FEASIBLE;
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args, out, err),
        Command::Check { system, solution } => cmd_check(system, solution, err),
        Command::Gen(args) => cmd_gen(args, out),
        Command::Bench { plan } => cmd_bench(plan, out),
        Command::Csdp { timing } => cmd_csdp(timing, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "{message}");
            code
        }
    }
}
