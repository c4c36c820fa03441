use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

use super::Policy;
use crate::system::Var;

/// Set of pending unknowns. A membership flag per unknown keeps inserts
/// idempotent; the deque holds each member exactly once.
#[derive(Debug, Clone)]
pub struct Worklist {
    member: Vec<bool>,
    order: VecDeque<usize>,
    policy: Policy,
    rng: Option<Pcg64Mcg>,
}

impl Worklist {
    pub fn new(n: usize, policy: Policy) -> Self {
        let rng = match policy {
            Policy::Random(seed) => Some(Pcg64Mcg::seed_from_u64(seed)),
            Policy::Lifo | Policy::Fifo => None,
        };
        Worklist {
            member: alloc::vec![false; n],
            order: VecDeque::new(),
            policy,
            rng,
        }
    }

    /// Returns `false` if `v` was already present.
    pub fn insert(&mut self, v: Var) -> bool {
        if self.member[v.0] {
            return false;
        }
        self.member[v.0] = true;
        self.order.push_back(v.0);
        true
    }

    pub fn pop(&mut self) -> Option<Var> {
        let v = match self.policy {
            Policy::Lifo => self.order.pop_back(),
            Policy::Fifo => self.order.pop_front(),
            Policy::Random(_) => {
                if self.order.is_empty() {
                    None
                } else {
                    let rng = self
                        .rng
                        .as_mut()
                        .expect("random policy carries a generator");
                    let at = rng.random_range(0..self.order.len());
                    self.order.swap_remove_back(at)
                }
            }
        }?;
        self.member[v] = false;
        Some(Var(v))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.member[v.0]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Membership flags indexed by unknown.
    pub fn members(&self) -> &[bool] {
        &self.member
    }
}
