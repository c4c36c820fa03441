use alloc::vec::Vec;
use core::sync::atomic::Ordering;

use super::invariants::{check_loop_state, InvariantViolation};
use super::{min_bound, Infeasibility, Policy, SolveError, SolveOptions, SolveOutcome, SolveStats};
use crate::system::{build_index, Assignment, Domain, System};
use crate::Worklist;

/// Worklist solver with the default options for `policy`.
pub fn solve_fast(system: &System, domain: &Domain, policy: Policy) -> (SolveOutcome, SolveStats) {
    match solve_fast_with(system, domain, &SolveOptions::with_policy(policy)) {
        Ok(solved) => solved,
        Err(e) => unreachable!("solve without checks or cancel flag failed: {e}"),
    }
}

/// Worklist solver.
///
/// The worklist holds exactly the unknowns with an unsatisfied outgoing
/// constraint. Taking `x_i` off it, the solver computes
/// `B = min(b + s(x_j))` over the outgoing constraints of `x_i`. If `B < d_1`
/// no domain value fits and the minimizing constraint is returned as the
/// witness. Otherwise `s(x_i)` walks down the domain to the largest value
/// `<= B` and every incoming constraint `x_j - x_i <= b` that now fails puts
/// `x_j` back on the worklist.
///
/// Values only ever decrease, so each unknown is taken off at most `k` times
/// and the whole run reads `O(n + k·m)` constraint entries and domain values.
pub fn solve_fast_with(
    system: &System,
    domain: &Domain,
    options: &SolveOptions<'_>,
) -> Result<(SolveOutcome, SolveStats), SolveError> {
    let n = system.n();
    let k = domain.k();
    let constraints = system.constraints();
    let index = build_index(system);
    let mut positions: Vec<usize> = alloc::vec![k - 1; n];
    let mut stats = SolveStats::default();
    let mut removal_counts: Vec<u64> = if options.debug_invariants {
        alloc::vec![0; n]
    } else {
        Vec::new()
    };

    // With everything at d_k, x_i - x_j <= b fails exactly when b < 0.
    let mut worklist = Worklist::new(n, options.policy);
    for v in system.vars() {
        if index
            .outgoing(v)
            .iter()
            .any(|&p| constraints[p].b.is_negative())
        {
            worklist.insert(v);
        }
    }
    if options.debug_invariants {
        check_loop_state(system, &index, domain, &positions, worklist.members())?;
    }

    while let Some(v) = worklist.pop() {
        if options.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(SolveError::Cancelled);
        }
        stats.removals += 1;
        if options.debug_invariants {
            removal_counts[v.0] += 1;
            if removal_counts[v.0] > k as u64 {
                return Err(InvariantViolation::TooManyRemovals {
                    var: v,
                    count: removal_counts[v.0],
                    k,
                }
                .into());
            }
        }

        let outgoing = index.outgoing(v);
        stats.scans += outgoing.len() as u64;
        let (ceiling, tightest) = min_bound(outgoing, constraints, |u| domain.get(positions[u.0]))
            .ok_or(InvariantViolation::SpuriousInWorklist { var: v })?;
        if ceiling < *domain.min() {
            let c = &constraints[tightest];
            return Ok((
                SolveOutcome::Infeasible(Infeasibility {
                    witness: tightest,
                    blocked: v,
                    blocking_value: domain.get(positions[c.j.0]).clone(),
                }),
                stats,
            ));
        }

        let old = positions[v.0];
        let mut new = old;
        while *domain.get(new) > ceiling {
            new -= 1;
        }
        if options.debug_invariants && new == old {
            return Err(InvariantViolation::NoDescent {
                var: v,
                position: old,
            }
            .into());
        }
        positions[v.0] = new;
        stats.walk_steps += (old - new) as u64;
        stats.updates += 1;

        let incoming = index.incoming(v);
        stats.scans += incoming.len() as u64;
        let lowered = domain.get(new);
        for &p in incoming {
            let c = &constraints[p];
            if !worklist.contains(c.i) && !c.holds(domain.get(positions[c.i.0]), lowered) {
                worklist.insert(c.i);
            }
        }

        if options.debug_invariants {
            check_loop_state(system, &index, domain, &positions, worklist.members())?;
        }
    }

    Ok((
        SolveOutcome::Feasible(Assignment::from_positions(domain, positions)),
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::system::Var;
    use core::sync::atomic::AtomicBool;

    fn ints(outcome: &SolveOutcome) -> Vec<i64> {
        outcome
            .assignment()
            .unwrap()
            .values()
            .iter()
            .map(|v| v.as_i64().unwrap())
            .collect()
    }

    #[test]
    fn chain_lifo() {
        let sys = System::from_triples(3, &[(1, 2, -1), (2, 3, -1)]).unwrap();
        let d = Domain::from_ints(&[0, 1, 2]).unwrap();
        let (outcome, stats) = solve_fast(&sys, &d, Policy::Lifo);
        assert_eq!(ints(&outcome), [0, 1, 2]);
        assert_eq!(stats.removals, 2);
        assert_eq!(stats.updates, 2);
        assert_eq!(stats.walk_steps, 3);
    }

    #[test]
    fn chain_fifo_revisits() {
        let sys = System::from_triples(3, &[(1, 2, -1), (2, 3, -1)]).unwrap();
        let d = Domain::from_ints(&[0, 1, 2]).unwrap();
        let (outcome, stats) = solve_fast(&sys, &d, Policy::Fifo);
        assert_eq!(ints(&outcome), [0, 1, 2]);
        assert_eq!(stats.removals, 3);
    }

    #[test]
    fn restricted_infeasible_pair() {
        let sys = System::from_triples(2, &[(1, 2, -3), (2, 1, 5)]).unwrap();
        let d = Domain::from_ints(&[0, 10]).unwrap();
        let (outcome, _) = solve_fast(&sys, &d, Policy::Lifo);
        let inf = outcome.infeasibility().unwrap();
        let c = sys.constraint(inf.witness);
        assert!(d.min() - &inf.blocking_value > c.b);
    }

    #[test]
    fn nothing_to_do() {
        let sys = System::from_triples(2, &[(1, 2, 0)]).unwrap();
        let d = Domain::from_ints(&[0, 1]).unwrap();
        let (outcome, stats) = solve_fast(&sys, &d, Policy::Lifo);
        assert_eq!(ints(&outcome), [1, 1]);
        assert_eq!(stats, SolveStats::default());
    }

    #[test]
    fn negative_self_loop_exhausts_domain() {
        let sys = System::from_triples(1, &[(1, 1, -1)]).unwrap();
        let d = Domain::from_ints(&[0, 1, 2, 3]).unwrap();
        let (outcome, stats) =
            solve_fast_with(&sys, &d, &SolveOptions::debug(Policy::Lifo)).unwrap();
        let inf = outcome.infeasibility().unwrap();
        assert_eq!(inf.blocked, Var(0));
        assert_eq!(inf.blocking_value, Scalar::ZERO);
        assert_eq!(stats.removals, 4);
        assert_eq!(stats.updates, 3);
    }

    #[test]
    fn witness_is_first_minimizer() {
        // two parallel copies give the same bound -7 + 1 for x1
        let sys = System::from_triples(2, &[(2, 1, 5), (1, 2, -7), (1, 2, -7)]).unwrap();
        let d = Domain::from_ints(&[0, 1]).unwrap();
        let (outcome, _) = solve_fast(&sys, &d, Policy::Lifo);
        assert_eq!(outcome.infeasibility().unwrap().witness, 1);
    }

    #[test]
    fn no_unknowns() {
        let sys = System::new(0, Vec::new()).unwrap();
        let d = Domain::from_ints(&[4]).unwrap();
        let (outcome, _) = solve_fast(&sys, &d, Policy::Fifo);
        assert!(outcome.assignment().unwrap().is_empty());
    }

    #[test]
    fn cancel_flag_stops() {
        let sys = System::from_triples(2, &[(1, 2, -3)]).unwrap();
        let d = Domain::from_ints(&[0, 5]).unwrap();
        let flag = AtomicBool::new(true);
        let options = SolveOptions {
            cancel: Some(&flag),
            ..Default::default()
        };
        assert_eq!(
            solve_fast_with(&sys, &d, &options),
            Err(SolveError::Cancelled)
        );
    }
}
