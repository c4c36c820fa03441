//! Ground-truth engines that share no code path with the solvers: exhaustive
//! enumeration of `D^n`, and Bellman-Ford over the unrestricted reals.

use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;
use crate::system::{evaluate, Assignment, Domain, System};

pub const DEFAULT_BRUTE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub feasible_count: u64,
    /// Coordinatewise maximum over every feasible assignment.
    pub pointwise_max: Option<Assignment>,
}

impl BruteForceResult {
    pub fn is_feasible(&self) -> bool {
        self.feasible_count > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapExceeded {
    pub k: usize,
    pub n: usize,
    pub cap: u64,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "brute force over k^n = {}^{} assignments exceeds the cap of {}",
            self.k, self.n, self.cap
        )
    }
}

/// Enumerates all `k^n` assignments, last unknown varying fastest.
pub fn brute_force(
    system: &System,
    domain: &Domain,
    cap: u64,
) -> Result<BruteForceResult, CapExceeded> {
    let (n, k) = (system.n(), domain.k());
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&t| n <= u32::MAX as usize && t <= cap);
    if total.is_none() {
        return Err(CapExceeded { k, n, cap });
    }

    let mut positions = alloc::vec![0usize; n];
    let mut feasible_count = 0u64;
    let mut max_positions: Option<Vec<usize>> = None;
    loop {
        let candidate = Assignment::from_positions(domain, positions.clone());
        if evaluate(system, &candidate).is_feasible() {
            feasible_count += 1;
            match &mut max_positions {
                None => max_positions = Some(positions.clone()),
                Some(max) => {
                    for (m, &p) in max.iter_mut().zip(&positions) {
                        *m = (*m).max(p);
                    }
                }
            }
        }
        // odometer step
        let mut digit = n;
        loop {
            if digit == 0 {
                let pointwise_max = max_positions.map(|p| Assignment::from_positions(domain, p));
                return Ok(BruteForceResult {
                    feasible_count,
                    pointwise_max,
                });
            }
            digit -= 1;
            positions[digit] += 1;
            if positions[digit] < k {
                break;
            }
            positions[digit] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnrestrictedOutcome {
    /// Shortest-path potentials; they satisfy every constraint.
    Feasible(Assignment),
    /// Constraint positions forming a closed walk whose bounds sum below zero,
    /// in walk order.
    NegativeCycle(Vec<usize>),
}

impl UnrestrictedOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, UnrestrictedOutcome::Feasible(_))
    }
}

/// Bellman-Ford on the constraint graph: edge `j -> i` of weight `b` for each
/// `x_i - x_j <= b`, plus a virtual source with zero-weight edges to every
/// unknown (modelled by starting all distances at zero).
pub fn bellman_ford(system: &System) -> UnrestrictedOutcome {
    let n = system.n();
    let constraints = system.constraints();
    let mut dist = alloc::vec![Scalar::ZERO; n];
    let mut pred: Vec<Option<usize>> = alloc::vec![None; n];

    // n + 1 vertices with the source: n rounds settle every shortest path.
    for _ in 0..n {
        let mut changed = false;
        for (p, c) in constraints.iter().enumerate() {
            let through = &dist[c.j.0] + &c.b;
            if through < dist[c.i.0] {
                dist[c.i.0] = through;
                pred[c.i.0] = Some(p);
                changed = true;
            }
        }
        if !changed {
            return UnrestrictedOutcome::Feasible(Assignment::new(dist));
        }
    }

    let relaxed = constraints
        .iter()
        .enumerate()
        .find(|(_, c)| &dist[c.j.0] + &c.b < dist[c.i.0]);
    let Some((p, c)) = relaxed else {
        return UnrestrictedOutcome::Feasible(Assignment::new(dist));
    };
    pred[c.i.0] = Some(p);

    // Walking n predecessor edges back lands on the cycle.
    let mut v = c.i;
    for _ in 0..n {
        v = constraints[pred[v.0].expect("relaxed vertices have predecessors")].j;
    }
    let start = v;
    let mut cycle = Vec::new();
    loop {
        let p = pred[v.0].expect("cycle vertices have predecessors");
        cycle.push(p);
        v = constraints[p].j;
        if v == start {
            break;
        }
    }
    cycle.reverse();
    UnrestrictedOutcome::NegativeCycle(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Var;
    use alloc::vec;

    #[test]
    fn brute_single_constraint() {
        let sys = System::from_triples(2, &[(1, 2, -3)]).unwrap();
        let d = Domain::from_ints(&[0, 5]).unwrap();
        let r = brute_force(&sys, &d, DEFAULT_BRUTE_CAP).unwrap();
        assert_eq!(r.feasible_count, 1);
        assert_eq!(
            r.pointwise_max.unwrap().values(),
            &[Scalar::int(0), Scalar::int(5)]
        );
    }

    #[test]
    fn brute_empty_system() {
        let sys = System::from_triples::<i64>(2, &[]).unwrap();
        let d = Domain::from_ints(&[0, 1]).unwrap();
        let r = brute_force(&sys, &d, DEFAULT_BRUTE_CAP).unwrap();
        assert_eq!(r.feasible_count, 4);
        assert_eq!(
            r.pointwise_max.unwrap().values(),
            &[Scalar::int(1), Scalar::int(1)]
        );
    }

    #[test]
    fn brute_contradiction() {
        let sys = System::from_triples(2, &[(1, 2, -3), (2, 1, -3)]).unwrap();
        let d = Domain::from_ints(&[0, 5]).unwrap();
        let r = brute_force(&sys, &d, DEFAULT_BRUTE_CAP).unwrap();
        assert!(!r.is_feasible());
        assert!(r.pointwise_max.is_none());
    }

    #[test]
    fn brute_zero_unknowns() {
        let sys = System::new(0, vec![]).unwrap();
        let d = Domain::from_ints(&[0]).unwrap();
        assert_eq!(brute_force(&sys, &d, 1).unwrap().feasible_count, 1);
    }

    #[test]
    fn brute_cap() {
        let sys = System::from_triples::<i64>(7, &[]).unwrap();
        let d = Domain::from_ints(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(
            brute_force(&sys, &d, 1_000_000),
            Err(CapExceeded {
                k: 10,
                n: 7,
                cap: 1_000_000
            })
        );
        let sys = System::from_triples::<i64>(6, &[]).unwrap();
        assert_eq!(
            brute_force(&sys, &d, 1_000_000).unwrap().feasible_count,
            1_000_000
        );
    }

    #[test]
    fn bf_feasible_pair() {
        let sys = System::from_triples(2, &[(1, 2, -3), (2, 1, 5)]).unwrap();
        let UnrestrictedOutcome::Feasible(s) = bellman_ford(&sys) else {
            panic!("expected feasible")
        };
        assert!(evaluate(&sys, &s).is_feasible());
        assert_eq!(s.value(Var(0)) - s.value(Var(1)), Scalar::int(-3));
    }

    #[test]
    fn bf_negative_pair() {
        let sys = System::from_triples(2, &[(1, 2, -3), (2, 1, -3)]).unwrap();
        let UnrestrictedOutcome::NegativeCycle(cycle) = bellman_ford(&sys) else {
            panic!("expected cycle")
        };
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1]);
        let total: Scalar = cycle.iter().map(|&p| &sys.constraint(p).b).sum();
        assert_eq!(total, Scalar::int(-6));
    }

    #[test]
    fn bf_empty() {
        let sys = System::from_triples::<i64>(3, &[]).unwrap();
        assert_eq!(
            bellman_ford(&sys),
            UnrestrictedOutcome::Feasible(Assignment::new(vec![Scalar::ZERO; 3]))
        );
    }

    #[test]
    fn bf_negative_self_loop() {
        let sys = System::from_triples(3, &[(1, 2, 0), (3, 3, -1)]).unwrap();
        assert_eq!(
            bellman_ford(&sys),
            UnrestrictedOutcome::NegativeCycle(vec![1])
        );
    }

    #[test]
    fn bf_cycle_behind_tail() {
        // 1 -> 2 -> 3 -> 2 with the 2,3 loop negative; x4 hangs off the loop
        let sys = System::from_triples(4, &[(2, 1, 0), (3, 2, -2), (2, 3, 1), (4, 3, 0)]).unwrap();
        let UnrestrictedOutcome::NegativeCycle(cycle) = bellman_ford(&sys) else {
            panic!("expected cycle")
        };
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2]);
    }
}
