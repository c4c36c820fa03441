use core::sync::atomic::{AtomicBool, Ordering};

use super::{Infeasibility, SolveOutcome};
use crate::system::{Assignment, Domain, System};

/// Reference solver: after every update, rescan the constraint list from the
/// start for the first unsatisfied constraint. `O(k·m·n)` in the worst case.
pub fn solve_naive(system: &System, domain: &Domain) -> SolveOutcome {
    solve_naive_with(system, domain, None).expect("no cancel flag was given")
}

/// [`solve_naive`] that gives up with `None` once `cancel` reads `true`.
pub fn solve_naive_with(
    system: &System,
    domain: &Domain,
    cancel: Option<&AtomicBool>,
) -> Option<SolveOutcome> {
    let mut positions = alloc::vec![domain.k() - 1; system.n()];
    let constraints = system.constraints();
    let value = |positions: &[usize], v: crate::system::Var| domain.get(positions[v.0]);

    loop {
        if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return None;
        }
        let Some(p) = constraints
            .iter()
            .position(|c| !c.holds(value(&positions, c.i), value(&positions, c.j)))
        else {
            return Some(SolveOutcome::Feasible(Assignment::from_positions(
                domain, positions,
            )));
        };
        let c = &constraints[p];
        let ceiling = &c.b + value(&positions, c.j);
        match domain.predecessor(&ceiling) {
            None => {
                return Some(SolveOutcome::Infeasible(Infeasibility {
                    witness: p,
                    blocked: c.i,
                    blocking_value: value(&positions, c.j).clone(),
                }))
            }
            Some(q) => positions[c.i.0] = q,
        }
    }
}
