//! Solvers for a system restricted to a finite domain.
//!
//! Both solvers start every unknown at the largest domain value and only ever
//! lower a value when one of its outgoing constraints forces it. The result is
//! the pointwise greatest feasible assignment, or a constraint that cannot be
//! satisfied by any value of `x_i` once `x_j` is at its current ceiling.
//!
//! - [`solve_naive`] rescans the whole constraint list after every update.
//! - [`solve_fast`] keeps a worklist of the unknowns with an unsatisfied
//!   outgoing constraint and touches only the constraints around the unknown it
//!   updates, for `O(n + k·m)` total work.

mod fast;
mod invariants;
mod naive;
mod worklist;

use core::fmt;
use core::sync::atomic::AtomicBool;

pub use fast::{solve_fast, solve_fast_with};
pub use invariants::{check_loop_state, InvariantViolation};
pub use naive::{solve_naive, solve_naive_with};
pub use worklist::Worklist;

use crate::scalar::Scalar;
use crate::system::{Assignment, Constraint, ConstraintIndex, System, Var};

/// Order in which the fast solver takes unknowns off its worklist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Policy {
    #[default]
    Lifo,
    Fifo,
    Random(u64),
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Lifo => f.write_str("lifo"),
            Policy::Fifo => f.write_str("fifo"),
            Policy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasibility {
    /// 0-based position of the blocking constraint `x_i - x_j <= b`.
    pub witness: usize,
    /// The unknown `x_i` that could not be lowered far enough.
    pub blocked: Var,
    /// `s(x_j)` when the solver halted; `d_1 - blocking_value > b` holds.
    pub blocking_value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(Assignment),
    Infeasible(Infeasibility),
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            SolveOutcome::Feasible(a) => Some(a),
            SolveOutcome::Infeasible(_) => None,
        }
    }

    pub fn infeasibility(&self) -> Option<&Infeasibility> {
        match self {
            SolveOutcome::Feasible(_) => None,
            SolveOutcome::Infeasible(inf) => Some(inf),
        }
    }

    /// Same verdict and, when feasible, the same assignment. Witnesses are not
    /// compared since different visiting orders may block on different
    /// constraints.
    pub fn agrees_with(&self, other: &SolveOutcome) -> bool {
        match (self, other) {
            (SolveOutcome::Feasible(a), SolveOutcome::Feasible(b)) => a == b,
            (SolveOutcome::Infeasible(_), SolveOutcome::Infeasible(_)) => true,
            _ => false,
        }
    }
}

/// Work counters of one [`solve_fast`] run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SolveStats {
    /// Unknowns taken off the worklist.
    pub removals: u64,
    /// Constraint entries read from the per-unknown lists.
    pub scans: u64,
    /// Domain positions stepped over while lowering values.
    pub walk_steps: u64,
    /// Values lowered.
    pub updates: u64,
}

impl SolveStats {
    pub fn work(&self) -> u64 {
        self.scans + self.walk_steps + self.removals
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions<'a> {
    pub policy: Policy,
    /// Re-verify the loop invariants after every iteration. Costs `O(n + m)`
    /// per iteration.
    pub debug_invariants: bool,
    /// Polled once per iteration; the solve stops with
    /// [`SolveError::Cancelled`] once it reads `true`.
    pub cancel: Option<&'a AtomicBool>,
}

impl SolveOptions<'_> {
    pub fn with_policy(policy: Policy) -> Self {
        SolveOptions {
            policy,
            ..Default::default()
        }
    }

    pub fn debug(policy: Policy) -> Self {
        SolveOptions {
            policy,
            debug_invariants: true,
            cancel: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// A loop invariant failed; this is a solver bug, never a property of the
    /// input.
    Invariant(InvariantViolation),
    Cancelled,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Invariant(v) => write!(f, "internal invariant violated: {v}"),
            SolveError::Cancelled => f.write_str("solve cancelled"),
        }
    }
}

impl From<InvariantViolation> for SolveError {
    fn from(v: InvariantViolation) -> Self {
        SolveError::Invariant(v)
    }
}

/// `min(b + s(x_j))` over the constraints `x_i - x_j <= b` of `v`, or `None`
/// when `v` has no outgoing constraint.
pub fn compute_bound(
    v: Var,
    assignment: &Assignment,
    system: &System,
    index: &ConstraintIndex,
) -> Option<Scalar> {
    min_bound(index.outgoing(v), system.constraints(), |u| {
        assignment.value(u)
    })
    .map(|(b, _)| b)
}

/// Minimum bound together with the first constraint position attaining it.
pub(crate) fn min_bound<'s>(
    outgoing: &[usize],
    constraints: &[Constraint],
    value: impl Fn(Var) -> &'s Scalar,
) -> Option<(Scalar, usize)> {
    let mut best: Option<(Scalar, usize)> = None;
    for &p in outgoing {
        let c = &constraints[p];
        let candidate = &c.b + value(c.j);
        match &best {
            Some((b, _)) if *b <= candidate => {}
            _ => best = Some((candidate, p)),
        }
    }
    best
}
