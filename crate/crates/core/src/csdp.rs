//! Clock shift decision: registers connected by combinational paths, a clock
//! period and a finite set of allowed clock shifts, turned into a difference
//! constraint system with one unknown per register.
//!
//! A path `i -> j` launches at register `i` (shift `x_i`) and is captured at
//! register `j` (shift `x_j`) one period later. With delays in
//! `[delay_min, delay_max]`:
//!
//! - hold (no double clocking): `x_j - x_i <= delay_min - hold`
//! - setup (no zero clocking): `x_i - x_j <= period - delay_max - setup`

use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;
use crate::system::{Constraint, Domain, System, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimingPath {
    pub from: Var,
    pub to: Var,
    pub delay_min: Scalar,
    pub delay_max: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimingGraph {
    pub registers: usize,
    pub paths: Vec<TimingPath>,
    pub setup: Scalar,
    pub hold: Scalar,
    pub period: Scalar,
    pub shifts: Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TimingError {
    NonPositivePeriod,
    NegativeSetup,
    NegativeHold,
    /// `path` is 0-based.
    RegisterOutOfRange {
        path: usize,
        register: usize,
        registers: usize,
    },
    BadDelays {
        path: usize,
    },
}

impl fmt::Display for TimingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimingError::NonPositivePeriod => f.write_str("period must be positive"),
            TimingError::NegativeSetup => f.write_str("setup margin must be non-negative"),
            TimingError::NegativeHold => f.write_str("hold margin must be non-negative"),
            TimingError::RegisterOutOfRange {
                path,
                register,
                registers,
            } => write!(
                f,
                "path {}: register {register} out of range [1, {registers}]",
                path + 1
            ),
            TimingError::BadDelays { path } => {
                write!(
                    f,
                    "path {}: delays must satisfy 0 <= dmin <= dmax",
                    path + 1
                )
            }
        }
    }
}

impl TimingGraph {
    pub fn validate(&self) -> Result<(), TimingError> {
        if self.period <= Scalar::ZERO {
            return Err(TimingError::NonPositivePeriod);
        }
        if self.setup.is_negative() {
            return Err(TimingError::NegativeSetup);
        }
        if self.hold.is_negative() {
            return Err(TimingError::NegativeHold);
        }
        for (path, p) in self.paths.iter().enumerate() {
            for register in [p.from, p.to] {
                if register.0 >= self.registers {
                    return Err(TimingError::RegisterOutOfRange {
                        path,
                        register: register.one_based(),
                        registers: self.registers,
                    });
                }
            }
            if p.delay_min.is_negative() || p.delay_min > p.delay_max {
                return Err(TimingError::BadDelays { path });
            }
        }
        Ok(())
    }

    pub fn with_period(&self, period: Scalar) -> TimingGraph {
        TimingGraph {
            period,
            ..self.clone()
        }
    }
}

/// Two constraints per path, in path order, hold before setup.
pub fn timing_to_dcs(graph: &TimingGraph) -> Result<(System, Domain), TimingError> {
    graph.validate()?;
    let mut constraints = Vec::with_capacity(2 * graph.paths.len());
    for p in &graph.paths {
        constraints.push(Constraint::new(p.to, p.from, &p.delay_min - &graph.hold));
        constraints.push(Constraint::new(
            p.from,
            p.to,
            &graph.period - &p.delay_max - &graph.setup,
        ));
    }
    let system = System::new(graph.registers, constraints).expect("registers validated");
    Ok((system, graph.shifts.clone()))
}
