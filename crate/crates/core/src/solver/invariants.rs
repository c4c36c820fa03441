use core::fmt;

use crate::system::{ConstraintIndex, Domain, System, Var};

/// A loop invariant of the fast solver that did not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantViolation {
    /// The unknown's domain position is past the last value.
    OutsideDomain { var: Var, position: usize },
    /// `var` has the unsatisfied outgoing constraint at `constraint` but is
    /// not on the worklist.
    MissingFromWorklist { var: Var, constraint: usize },
    /// `var` is on the worklist although all its outgoing constraints hold.
    SpuriousInWorklist { var: Var },
    /// An update did not lower the value.
    NoDescent { var: Var, position: usize },
    /// `var` was taken off the worklist more than `k` times.
    TooManyRemovals { var: Var, count: u64, k: usize },
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantViolation::OutsideDomain { var, position } => {
                write!(f, "{var} at domain position {position}, outside the domain")
            }
            InvariantViolation::MissingFromWorklist { var, constraint } => write!(
                f,
                "{var} violates constraint {} but is not on the worklist",
                constraint + 1
            ),
            InvariantViolation::SpuriousInWorklist { var } => {
                write!(
                    f,
                    "{var} is on the worklist with every outgoing constraint satisfied"
                )
            }
            InvariantViolation::NoDescent { var, position } => {
                write!(
                    f,
                    "update of {var} did not go below domain position {position}"
                )
            }
            InvariantViolation::TooManyRemovals { var, count, k } => {
                write!(f, "{var} removed {count} times with only {k} domain values")
            }
        }
    }
}

/// Checks that every position lies in the domain and that an unknown is
/// flagged in `members` exactly when one of its outgoing constraints is
/// unsatisfied.
pub fn check_loop_state(
    system: &System,
    index: &ConstraintIndex,
    domain: &Domain,
    positions: &[usize],
    members: &[bool],
) -> Result<(), InvariantViolation> {
    if let Some((v, &position)) = positions.iter().enumerate().find(|(_, &p)| p >= domain.k()) {
        return Err(InvariantViolation::OutsideDomain {
            var: Var(v),
            position,
        });
    }
    let constraints = system.constraints();
    for var in system.vars() {
        let broken = index.outgoing(var).iter().copied().find(|&p| {
            let c = &constraints[p];
            !c.holds(domain.get(positions[c.i.0]), domain.get(positions[c.j.0]))
        });
        match (broken, members[var.0]) {
            (Some(constraint), false) => {
                return Err(InvariantViolation::MissingFromWorklist { var, constraint })
            }
            (None, true) => return Err(InvariantViolation::SpuriousInWorklist { var }),
            _ => {}
        }
    }
    Ok(())
}
