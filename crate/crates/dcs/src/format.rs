//! Plain-text formats.
//!
//! All formats are line oriented: `#` starts a comment, blank lines are
//! ignored and tokens are separated by whitespace. Numbers are exact: integers,
//! terminating decimals (`2.5`) or rationals (`1/3`).
//!
//! System (`dcs 1`):
//!
//! ```text
//! dcs 1
//! vars 2
//! domain 0 5
//! con 1 2 -3      # x1 - x2 <= -3
//! ```
//!
//! Outcome:
//!
//! ```text
//! feasible            infeasible              infeasible
//! x 1 0               witness 1 2 -3          cycle 1 2 -3
//! x 2 5                                       cycle 2 1 -3
//! ```
//!
//! Timing graph (`csdp 1`): `regs`, `period`, `setup`, `hold` and `shifts`
//! once each, then `path <from> <to> <dmin> <dmax>` per path.

use std::fmt::{self, Write as _};

use dcs_core::{
    Constraint, Domain, Infeasibility, Scalar, SolveOutcome, System, TimingGraph, TimingPath,
    UnrestrictedOutcome, Var,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    /// 1-based.
    pub line: usize,
    /// 1-based; `0` when the diagnostic concerns the whole line.
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    fn error(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity: Severity::Error,
        }
    }

    fn warning(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity: Severity::Warning,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        if self.column > 0 {
            write!(
                f,
                "line {}:{}: {kind}: {}",
                self.line, self.column, self.message
            )
        } else {
            write!(f, "line {}: {kind}: {}", self.line, self.message)
        }
    }
}

/// Non-empty lines after comment stripping, as `(line, [(column, token)])`.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (at, ch) in content
            .char_indices()
            .chain(std::iter::once((content.len(), ' ')))
        {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push((content[..s].chars().count() + 1, &content[s..at]));
                    start = None;
                }
                (false, None) => start = Some(at),
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some((n + 1, tokens))
    })
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

struct Collector {
    diagnostics: Vec<ParseDiagnostic>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            diagnostics: Vec::new(),
        }
    }

    fn error(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.diagnostics
            .push(ParseDiagnostic::error(line, column, message));
    }

    fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(ParseDiagnostic::is_error)
    }

    fn scalar(&mut self, line: usize, (column, token): (usize, &str)) -> Option<Scalar> {
        match token.parse() {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(line, column, e.to_string());
                None
            }
        }
    }

    fn count(&mut self, line: usize, (column, token): (usize, &str)) -> Option<usize> {
        match token.parse() {
            Ok(v) if token.bytes().all(|b| b.is_ascii_digit()) => Some(v),
            _ => {
                self.error(
                    line,
                    column,
                    format!("expected a non-negative integer, found `{token}`"),
                );
                None
            }
        }
    }

    /// A 1-based index in `[1, n]`, returned 0-based.
    fn index(&mut self, line: usize, token: (usize, &str), n: usize) -> Option<Var> {
        let v = self.count(line, token)?;
        if v == 0 || v > n {
            self.error(line, token.0, format!("index {v} out of range [1, {n}]"));
            return None;
        }
        Some(Var(v - 1))
    }

    fn arity(&mut self, line: usize, tokens: &[(usize, &str)], expected: usize) -> bool {
        if tokens.len() - 1 != expected {
            self.error(
                line,
                tokens[0].0,
                format!(
                    "`{}` takes {expected} argument(s), found {}",
                    tokens[0].1,
                    tokens.len() - 1
                ),
            );
            return false;
        }
        true
    }

    /// Checks a `<magic> 1` header line.
    fn header(&mut self, line: usize, tokens: &[(usize, &str)], magic: &str) {
        if tokens[0].1 != magic {
            self.error(line, tokens[0].0, format!("expected `{magic} 1` header"));
        } else if tokens.len() != 2 || tokens[1].1 != "1" {
            self.error(
                line,
                tokens[0].0,
                format!("unsupported `{magic}` version, expected `{magic} 1`"),
            );
        }
    }

    fn domain(&mut self, line: usize, tokens: &[(usize, &str)]) -> Option<Domain> {
        if tokens.len() < 2 {
            self.error(line, tokens[0].0, "domain needs at least one value");
            return None;
        }
        let values: Vec<Option<Scalar>> =
            tokens[1..].iter().map(|&t| self.scalar(line, t)).collect();
        let values: Vec<Scalar> = values.into_iter().collect::<Option<_>>()?;
        match Domain::new(values) {
            Ok(d) => Some(d),
            Err(dcs_core::DomainError::NotIncreasing { position }) => {
                self.error(
                    line,
                    tokens[position + 1].0,
                    "domain not strictly increasing",
                );
                None
            }
            Err(e) => {
                self.error(line, tokens[0].0, e.to_string());
                None
            }
        }
    }
}

/// A parsed system file. `warnings` never affect acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSystem {
    pub system: System,
    pub domain: Domain,
    pub warnings: Vec<ParseDiagnostic>,
}

/// Parses the `dcs 1` format, collecting as many diagnostics as it safely
/// can.
pub fn parse_system(text: &str) -> Result<ParsedSystem, Vec<ParseDiagnostic>> {
    let mut c = Collector::new();
    let mut header_seen = false;
    let mut n: Option<usize> = None;
    let mut vars_seen = false;
    let mut domain: Option<(Option<Domain>, usize)> = None;
    let mut constraints = Vec::new();

    for (line, tokens) in significant_lines(text) {
        if !header_seen {
            header_seen = true;
            c.header(line, &tokens, "dcs");
            continue;
        }
        let (column, directive) = tokens[0];
        match directive {
            "vars" => {
                if vars_seen {
                    c.error(line, column, "duplicate `vars`");
                } else if c.arity(line, &tokens, 1) {
                    if let Some(v) = c.count(line, tokens[1]) {
                        n = Some(v);
                    }
                }
                vars_seen = true;
            }
            "domain" => {
                if let Some((_, first)) = domain {
                    c.error(
                        line,
                        column,
                        format!("duplicate `domain` (first on line {first})"),
                    );
                } else {
                    domain = Some((c.domain(line, &tokens), line));
                }
            }
            "con" => {
                let Some(n) = n else {
                    // a malformed `vars` line has been reported already
                    if !vars_seen {
                        c.error(line, column, "`con` before `vars`");
                    }
                    continue;
                };
                if !c.arity(line, &tokens, 3) {
                    continue;
                }
                let i = c.index(line, tokens[1], n);
                let j = c.index(line, tokens[2], n);
                let b = c.scalar(line, tokens[3]);
                if let (Some(i), Some(j), Some(b)) = (i, j, b) {
                    if i == j && b.is_negative() {
                        c.diagnostics.push(ParseDiagnostic::warning(
                            line,
                            column,
                            format!("self-loop {i} - {i} <= {b} can never hold"),
                        ));
                    }
                    constraints.push(Constraint::new(i, j, b));
                }
            }
            other => c.error(line, column, format!("unknown directive `{other}`")),
        }
    }

    let end = last_line(text);
    if !header_seen {
        c.error(end, 0, "empty input, expected `dcs 1` header");
    }
    if n.is_none() && !c.has_errors() {
        c.error(end, 0, "missing `vars` line");
    }
    if domain.is_none() && !c.has_errors() {
        c.error(end, 0, "missing `domain` line");
    }
    if c.has_errors() {
        return Err(c.diagnostics);
    }
    let system =
        System::new(n.expect("checked"), constraints).expect("indices validated while parsing");
    let domain = domain.and_then(|(d, _)| d).expect("checked");
    Ok(ParsedSystem {
        system,
        domain,
        warnings: c.diagnostics,
    })
}

/// Canonical `dcs 1` text: one directive per line, constraints in stored
/// order.
pub fn serialize_system(system: &System, domain: &Domain) -> String {
    let mut out = String::new();
    writeln!(out, "dcs 1").unwrap();
    writeln!(out, "vars {}", system.n()).unwrap();
    write_values(&mut out, "domain", domain.values());
    for c in system.constraints() {
        writeln!(out, "con {} {} {}", c.i.one_based(), c.j.one_based(), c.b).unwrap();
    }
    out
}

fn write_values(out: &mut String, directive: &str, values: &[Scalar]) {
    out.push_str(directive);
    for v in values {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

/// Solver outcome as written to and read from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomeRecord {
    /// Values of `x1..xn`.
    Feasible(Vec<Scalar>),
    /// No assignment in the domain; `witness` is the blocking constraint when
    /// the solver names one.
    Infeasible { witness: Option<Constraint> },
    /// No real assignment; the constraints form a negative cycle.
    NegativeCycle(Vec<Constraint>),
}

impl OutcomeRecord {
    pub fn from_outcome(outcome: &SolveOutcome, system: &System) -> Self {
        match outcome {
            SolveOutcome::Feasible(s) => OutcomeRecord::Feasible(s.values().to_vec()),
            SolveOutcome::Infeasible(Infeasibility { witness, .. }) => OutcomeRecord::Infeasible {
                witness: Some(system.constraint(*witness).clone()),
            },
        }
    }

    pub fn from_unrestricted(outcome: &UnrestrictedOutcome, system: &System) -> Self {
        match outcome {
            UnrestrictedOutcome::Feasible(s) => OutcomeRecord::Feasible(s.values().to_vec()),
            UnrestrictedOutcome::NegativeCycle(cycle) => OutcomeRecord::NegativeCycle(
                cycle
                    .iter()
                    .map(|&p| system.constraint(p).clone())
                    .collect(),
            ),
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, OutcomeRecord::Feasible(_))
    }
}

pub fn serialize_outcome(outcome: &SolveOutcome, system: &System) -> String {
    serialize_record(&OutcomeRecord::from_outcome(outcome, system))
}

pub fn serialize_record(record: &OutcomeRecord) -> String {
    let mut out = String::new();
    let write_constraint = |out: &mut String, tag: &str, c: &Constraint| {
        writeln!(out, "{tag} {} {} {}", c.i.one_based(), c.j.one_based(), c.b).unwrap();
    };
    match record {
        OutcomeRecord::Feasible(values) => {
            out.push_str("feasible\n");
            for (v, value) in values.iter().enumerate() {
                writeln!(out, "x {} {value}", v + 1).unwrap();
            }
        }
        OutcomeRecord::Infeasible { witness } => {
            out.push_str("infeasible\n");
            if let Some(c) = witness {
                write_constraint(&mut out, "witness", c);
            }
        }
        OutcomeRecord::NegativeCycle(cycle) => {
            out.push_str("infeasible\n");
            for c in cycle {
                write_constraint(&mut out, "cycle", c);
            }
        }
    }
    out
}

pub fn parse_outcome(text: &str) -> Result<OutcomeRecord, Vec<ParseDiagnostic>> {
    let mut c = Collector::new();
    let mut verdict: Option<bool> = None;
    let mut values: Vec<(usize, usize, Scalar)> = Vec::new(); // (index, line, value)
    let mut witnesses: Vec<(usize, Constraint)> = Vec::new();
    let mut cycle: Vec<Constraint> = Vec::new();

    for (line, tokens) in significant_lines(text) {
        let (column, tag) = tokens[0];
        match (verdict, tag) {
            (None, "feasible") | (None, "infeasible") => {
                c.arity(line, &tokens, 0);
                verdict = Some(tag == "feasible");
            }
            (None, _) => {
                c.error(line, column, "expected `feasible` or `infeasible`");
                break;
            }
            (Some(true), "x") => {
                if !c.arity(line, &tokens, 2) {
                    continue;
                }
                let index = c.count(line, tokens[1]);
                let value = c.scalar(line, tokens[2]);
                match (index, value) {
                    (Some(0), _) => c.error(line, tokens[1].0, "unknowns are numbered from 1"),
                    (Some(index), Some(value)) => {
                        if let Some((_, first, _)) = values.iter().find(|(i, _, _)| *i == index) {
                            c.error(
                                line,
                                tokens[1].0,
                                format!("x {index} already given on line {first}"),
                            );
                        } else {
                            values.push((index, line, value));
                        }
                    }
                    _ => {}
                }
            }
            (Some(false), "witness") | (Some(false), "cycle") => {
                if !c.arity(line, &tokens, 3) {
                    continue;
                }
                let i = c.count(line, tokens[1]);
                let j = c.count(line, tokens[2]);
                let b = c.scalar(line, tokens[3]);
                let (Some(i), Some(j), Some(b)) = (i, j, b) else {
                    continue;
                };
                if i == 0 || j == 0 {
                    c.error(line, column, "unknowns are numbered from 1");
                    continue;
                }
                let constraint = Constraint::new(Var(i - 1), Var(j - 1), b);
                if tag == "witness" {
                    witnesses.push((line, constraint));
                } else {
                    cycle.push(constraint);
                }
            }
            _ => c.error(line, column, format!("unexpected `{tag}` line")),
        }
    }

    let end = last_line(text);
    match verdict {
        None if !c.has_errors() => c.error(end, 0, "empty outcome"),
        Some(false) if witnesses.len() > 1 => c.error(witnesses[1].0, 1, "more than one witness"),
        Some(false) if !witnesses.is_empty() && !cycle.is_empty() => c.error(
            witnesses[0].0,
            1,
            "an outcome has either a witness or a cycle",
        ),
        _ => {}
    }
    values.sort_by_key(|(index, _, _)| *index);
    if let Some(gap) = values
        .iter()
        .enumerate()
        .find(|(at, (index, _, _))| *index != at + 1)
    {
        c.error(gap.1 .1, 0, format!("missing x {}", gap.0 + 1));
    }
    if c.has_errors() {
        return Err(c.diagnostics);
    }
    Ok(match verdict {
        Some(true) => OutcomeRecord::Feasible(values.into_iter().map(|(_, _, v)| v).collect()),
        _ if !cycle.is_empty() => OutcomeRecord::NegativeCycle(cycle),
        _ => OutcomeRecord::Infeasible {
            witness: witnesses.pop().map(|(_, c)| c),
        },
    })
}

/// Parses the `csdp 1` timing format; validation failures of the graph are
/// reported like syntax errors.
pub fn parse_timing(text: &str) -> Result<TimingGraph, Vec<ParseDiagnostic>> {
    let mut c = Collector::new();
    let mut header_seen = false;
    let mut registers: Option<usize> = None;
    let mut scalars: [Option<(Scalar, usize)>; 3] = [None, None, None]; // period, setup, hold
    let mut shifts: Option<(Option<Domain>, usize)> = None;
    let mut paths: Vec<(usize, TimingPath)> = Vec::new();
    let names = ["period", "setup", "hold"];

    for (line, tokens) in significant_lines(text) {
        if !header_seen {
            header_seen = true;
            c.header(line, &tokens, "csdp");
            continue;
        }
        let (column, directive) = tokens[0];
        match directive {
            "regs" => {
                if registers.is_some() {
                    c.error(line, column, "duplicate `regs`");
                } else if c.arity(line, &tokens, 1) {
                    registers = c.count(line, tokens[1]);
                }
            }
            "period" | "setup" | "hold" => {
                let slot = names
                    .iter()
                    .position(|n| *n == directive)
                    .expect("matched above");
                if scalars[slot].is_some() {
                    c.error(line, column, format!("duplicate `{directive}`"));
                } else if c.arity(line, &tokens, 1) {
                    scalars[slot] = c.scalar(line, tokens[1]).map(|v| (v, line));
                }
            }
            "shifts" => {
                if shifts.is_some() {
                    c.error(line, column, "duplicate `shifts`");
                } else {
                    shifts = Some((c.domain(line, &tokens), line));
                }
            }
            "path" => {
                let Some(r) = registers else {
                    c.error(line, column, "`path` before `regs`");
                    continue;
                };
                if !c.arity(line, &tokens, 4) {
                    continue;
                }
                let from = c.index(line, tokens[1], r);
                let to = c.index(line, tokens[2], r);
                let dmin = c.scalar(line, tokens[3]);
                let dmax = c.scalar(line, tokens[4]);
                if let (Some(from), Some(to), Some(delay_min), Some(delay_max)) =
                    (from, to, dmin, dmax)
                {
                    paths.push((
                        line,
                        TimingPath {
                            from,
                            to,
                            delay_min,
                            delay_max,
                        },
                    ));
                }
            }
            other => c.error(line, column, format!("unknown directive `{other}`")),
        }
    }

    let end = last_line(text);
    if !header_seen {
        c.error(end, 0, "empty input, expected `csdp 1` header");
    }
    if !c.has_errors() {
        if registers.is_none() {
            c.error(end, 0, "missing `regs` line");
        }
        for (slot, name) in names.iter().enumerate() {
            if scalars[slot].is_none() {
                c.error(end, 0, format!("missing `{name}` line"));
            }
        }
        if shifts.is_none() {
            c.error(end, 0, "missing `shifts` line");
        }
    }
    if c.has_errors() {
        return Err(c.diagnostics);
    }

    let [period, setup, hold] = scalars.map(|s| s.expect("checked"));
    let graph = TimingGraph {
        registers: registers.expect("checked"),
        paths: paths.iter().map(|(_, p)| p.clone()).collect(),
        setup: setup.0,
        hold: hold.0,
        period: period.0,
        shifts: shifts.and_then(|(d, _)| d).expect("checked"),
    };
    match graph.validate() {
        Ok(()) => Ok(graph),
        Err(e) => {
            let line = match &e {
                dcs_core::TimingError::NonPositivePeriod => period.1,
                dcs_core::TimingError::NegativeSetup => setup.1,
                dcs_core::TimingError::NegativeHold => hold.1,
                dcs_core::TimingError::RegisterOutOfRange { path, .. }
                | dcs_core::TimingError::BadDelays { path } => paths[*path].0,
            };
            Err(vec![ParseDiagnostic::error(line, 0, e.to_string())])
        }
    }
}

pub fn serialize_timing(graph: &TimingGraph) -> String {
    let mut out = String::new();
    writeln!(out, "csdp 1").unwrap();
    writeln!(out, "regs {}", graph.registers).unwrap();
    writeln!(out, "period {}", graph.period).unwrap();
    writeln!(out, "setup {}", graph.setup).unwrap();
    writeln!(out, "hold {}", graph.hold).unwrap();
    write_values(&mut out, "shifts", graph.shifts.values());
    for p in &graph.paths {
        writeln!(
            out,
            "path {} {} {} {}",
            p.from.one_based(),
            p.to.one_based(),
            p.delay_min,
            p.delay_max
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(text: &str) -> Vec<ParseDiagnostic> {
        parse_system(text).unwrap_err()
    }

    #[test]
    fn minimal_system() {
        let parsed = parse_system("dcs 1\nvars 2\ndomain 0 5\ncon 1 2 -3\n").unwrap();
        assert_eq!(
            parsed.system,
            System::from_triples(2, &[(1, 2, -3)]).unwrap()
        );
        assert_eq!(parsed.domain, Domain::from_ints(&[0, 5]).unwrap());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn comments_blank_lines_and_order() {
        let text = "# header comment\n\ndcs 1 # version\nvars 3\ncon 1 2 1/3\n  \ncon 3 3 0.5\ndomain -1 0 2.5\n";
        let parsed = parse_system(text).unwrap();
        assert_eq!(parsed.system.m(), 2);
        assert_eq!(parsed.system.constraint(0).b, Scalar::ratio(1, 3).unwrap());
        assert_eq!(parsed.domain.k(), 3);
    }

    #[test]
    fn domain_must_increase() {
        let diags = errors("dcs 1\nvars 2\ndomain 5 0\n");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].line, 3);
        assert!(diags[0].message.contains("domain not strictly increasing"));
        assert!(errors("dcs 1\nvars 2\ndomain 0 1 1\n")[0]
            .message
            .contains("not strictly increasing"));
    }

    #[test]
    fn index_out_of_range() {
        let diags = errors("dcs 1\nvars 2\ndomain 0 5\ncon 3 1 0\n");
        assert_eq!(diags[0].line, 4);
        assert_eq!(diags[0].column, 5);
        assert!(diags[0].message.contains("index 3 out of range"));
    }

    #[test]
    fn collects_several_errors() {
        let diags = errors("dcs 1\nvars 2\nfrob 1\ndomain 0 x\ncon 1 0 1\ncon 1 2 1..0\n");
        let lines: Vec<usize> = diags.iter().map(|d| d.line).collect();
        assert_eq!(lines, [3, 4, 5, 6]);
        assert!(diags[0].message.contains("unknown directive"));
        assert!(diags[1].message.contains("malformed number"));
    }

    #[test]
    fn structural_errors() {
        assert!(errors("")[0].message.contains("empty input"));
        assert!(errors("dcs 2\nvars 1\ndomain 0\n")[0]
            .message
            .contains("version"));
        assert!(errors("dcx 1\n")[0].message.contains("header"));
        assert!(errors("dcs 1\ncon 1 1 0\nvars 1\ndomain 0\n")[0]
            .message
            .contains("before `vars`"));
        assert!(errors("dcs 1\nvars 1\nvars 1\ndomain 0\n")[0]
            .message
            .contains("duplicate"));
        assert!(errors("dcs 1\nvars 1\ndomain\n")[0]
            .message
            .contains("at least one value"));
        assert!(errors("dcs 1\nvars 1\n")[0]
            .message
            .contains("missing `domain`"));
        assert!(errors("dcs 1\ndomain 0\n")[0]
            .message
            .contains("missing `vars`"));
        assert!(errors("dcs 1\nvars -1\ndomain 0\n")[0]
            .message
            .contains("non-negative integer"));
        assert!(errors("dcs 1\nvars 1\ndomain 0\ncon 1 1\n")[0]
            .message
            .contains("3 argument"));
    }

    #[test]
    fn empty_system_allowed() {
        let parsed = parse_system("dcs 1\nvars 0\ndomain 7\n").unwrap();
        assert_eq!(parsed.system.n(), 0);
    }

    #[test]
    fn negative_self_loop_warns() {
        let parsed = parse_system("dcs 1\nvars 1\ndomain 0 1\ncon 1 1 -1\n").unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.warnings[0].severity, Severity::Warning);
    }

    #[test]
    fn serialize_minimal() {
        let sys = System::from_triples::<i64>(1, &[]).unwrap();
        let d = Domain::from_ints(&[0]).unwrap();
        assert_eq!(serialize_system(&sys, &d), "dcs 1\nvars 1\ndomain 0\n");
    }

    #[test]
    fn serialize_rationals_exactly() {
        let sys = System::from_triples(
            2,
            &[
                (1, 2, Scalar::ratio(1, 3).unwrap()),
                (2, 1, Scalar::ratio(-5, 2).unwrap()),
            ],
        )
        .unwrap();
        let d = Domain::from_ints(&[0, 5]).unwrap();
        let text = serialize_system(&sys, &d);
        assert_eq!(
            text,
            "dcs 1\nvars 2\ndomain 0 5\ncon 1 2 1/3\ncon 2 1 -2.5\n"
        );
        let back = parse_system(&text).unwrap();
        assert_eq!((back.system, back.domain), (sys, d));
    }

    #[test]
    fn outcome_text() {
        let sys = System::from_triples(2, &[(1, 2, -3)]).unwrap();
        let d = Domain::from_ints(&[0, 5]).unwrap();
        let feasible = SolveOutcome::Feasible(dcs_core::Assignment::from_positions(&d, vec![0, 1]));
        assert_eq!(
            serialize_outcome(&feasible, &sys),
            "feasible\nx 1 0\nx 2 5\n"
        );
        let infeasible = SolveOutcome::Infeasible(Infeasibility {
            witness: 0,
            blocked: Var(0),
            blocking_value: Scalar::int(10),
        });
        let text = serialize_outcome(&infeasible, &sys);
        assert_eq!(text, "infeasible\nwitness 1 2 -3\n");
        assert_eq!(
            parse_outcome(&text).unwrap(),
            OutcomeRecord::Infeasible {
                witness: Some(sys.constraint(0).clone())
            }
        );
    }

    #[test]
    fn outcome_errors() {
        assert!(parse_outcome("").is_err());
        assert!(parse_outcome("maybe\n").is_err());
        assert_eq!(
            parse_outcome("feasible\nx 2 0\n").unwrap_err()[0].message,
            "missing x 1"
        );
        assert!(parse_outcome("feasible\nx 1 0\nx 1 1\n").unwrap_err()[0]
            .message
            .contains("already"));
        assert!(parse_outcome("feasible\nwitness 1 2 3\n").is_err());
        assert!(parse_outcome("infeasible\nwitness 1 2 3\nwitness 1 2 3\n").is_err());
        assert!(parse_outcome("infeasible\nx 1 2\n").is_err());
        assert!(parse_outcome("feasible\nx 0 2\n").is_err());
        assert_eq!(
            parse_outcome("infeasible\n").unwrap(),
            OutcomeRecord::Infeasible { witness: None }
        );
        assert_eq!(
            parse_outcome("feasible\n").unwrap(),
            OutcomeRecord::Feasible(vec![])
        );
    }

    #[test]
    fn outcome_accepts_any_x_order() {
        let record = parse_outcome("feasible\nx 2 5\nx 1 0\n").unwrap();
        assert_eq!(
            record,
            OutcomeRecord::Feasible(vec![Scalar::int(0), Scalar::int(5)])
        );
    }

    #[test]
    fn timing_round_trip() {
        let text = "csdp 1\nregs 2\nperiod 10\nsetup 1\nhold 1\nshifts 0 1 2\npath 1 2 2 7\n";
        let graph = parse_timing(text).unwrap();
        assert_eq!(graph.paths.len(), 1);
        assert_eq!(serialize_timing(&graph), text);
    }

    #[test]
    fn timing_errors() {
        let base = "csdp 1\nregs 2\nperiod 10\nsetup 1\nhold 1\nshifts 0 1 2\n";
        let diags = parse_timing(&format!("{base}path 1 2 5 3\n")).unwrap_err();
        assert_eq!(diags[0].line, 7);
        let diags = parse_timing(&format!("{base}path 1 3 0 1\n")).unwrap_err();
        assert!(diags[0].message.contains("index 3 out of range"));
        let diags =
            parse_timing("csdp 1\nregs 1\nperiod 0\nsetup 0\nhold 0\nshifts 0\n").unwrap_err();
        assert_eq!(diags[0].line, 3);
        assert!(parse_timing("csdp 1\nregs 1\n").unwrap_err().len() >= 4);
        assert!(parse_timing("csdp 1\npath 1 1 0 0\n").unwrap_err()[0]
            .message
            .contains("before `regs`"));
    }
}
