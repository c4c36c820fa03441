//! Systems of difference constraints `x_i - x_j <= b` whose unknowns must
//! take values from a finite set `D = {d_1 < ... < d_k}`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides the data model
//! ([`System`], [`Domain`], [`Assignment`]), two solvers that return the
//! pointwise greatest feasible assignment ([`solve_naive`], and the worklist
//! solver [`solve_fast`] that runs in `O(n + k·m)`), exhaustive and
//! Bellman-Ford oracles, seeded instance generators, and a translation of
//! clock shift scheduling problems into constraint systems.
//!
//! ```
//! use dcs_core::{solve_fast, Domain, Policy, Scalar, System};
//!
//! // x1 - x2 <= -3 over D = {0, 5}
//! let system = System::from_triples(2, &[(1, 2, -3)]).unwrap();
//! let domain = Domain::from_ints(&[0, 5]).unwrap();
//! let (outcome, _stats) = solve_fast(&system, &domain, Policy::Lifo);
//! let s = outcome.assignment().unwrap();
//! assert_eq!(s.values(), &[Scalar::int(0), Scalar::int(5)]);
//! ```
#![no_std]

extern crate alloc;

pub mod csdp;
pub mod gen;
pub mod oracle;
pub mod scalar;
pub mod solver;
pub mod system;

pub use csdp::{timing_to_dcs, TimingError, TimingGraph, TimingPath};
pub use gen::{generate, Family, GenConfig, GenError, Instance};
pub use oracle::{bellman_ford, brute_force, BruteForceResult, CapExceeded, UnrestrictedOutcome};
pub use scalar::{ParseScalarError, Scalar};
pub use solver::{
    compute_bound, solve_fast, solve_fast_with, solve_naive, solve_naive_with, Infeasibility,
    InvariantViolation, Policy, SolveError, SolveOptions, SolveOutcome, SolveStats, Worklist,
};
pub use system::{
    build_index, domain_predecessor, evaluate, Assignment, Constraint, ConstraintIndex, Domain,
    DomainError, System, SystemError, Var, ViolationReport,
};
