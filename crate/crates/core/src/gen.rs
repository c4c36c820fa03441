//! Seeded instance generators.
//!
//! Every generator draws from a [`Pcg64Mcg`] seeded with `config.seed`, so a
//! config always yields the same instance on every platform.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

use crate::scalar::Scalar;
use crate::system::{Assignment, Constraint, Domain, System, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Uniform,
    Planted,
    RestrictedInfeasible,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::Uniform,
        Family::Planted,
        Family::RestrictedInfeasible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Planted => "planted",
            Family::RestrictedInfeasible => "restricted-infeasible",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or(GenError::InvalidConfig("unknown family"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenConfig {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    /// Inclusive range of constraint bounds (uniform family).
    pub bound_range: (i64, i64),
    /// Inclusive range the `k` domain values are drawn from.
    pub domain_range: (i64, i64),
    /// Largest slack added on top of a planted difference.
    pub slack_max: i64,
}

impl GenConfig {
    pub fn new(family: Family, n: usize, m: usize, k: usize, seed: u64) -> Self {
        GenConfig {
            family,
            n,
            m,
            k,
            seed,
            bound_range: (-10, 10),
            domain_range: (0, 100),
            slack_max: 10,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::InvalidConfig("n must be at least 1"));
        }
        if self.k == 0 {
            return Err(GenError::InvalidConfig("k must be at least 1"));
        }
        if self.bound_range.0 > self.bound_range.1 {
            return Err(GenError::InvalidConfig("bound range is empty"));
        }
        if self.domain_range.0 > self.domain_range.1 {
            return Err(GenError::InvalidConfig("domain range is empty"));
        }
        if self.slack_max < 0 {
            return Err(GenError::InvalidConfig("slack_max must be non-negative"));
        }
        let width = self
            .domain_range
            .1
            .abs_diff(self.domain_range.0)
            .saturating_add(1);
        if width > u32::MAX as u64 {
            return Err(GenError::InvalidConfig(
                "domain range wider than 2^32 values",
            ));
        }
        if width < self.k as u64 {
            return Err(GenError::DomainRangeTooSmall { k: self.k, width });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    InvalidConfig(&'static str),
    DomainRangeTooSmall { k: usize, width: u64 },
    GadgetTooSmall { n: usize, m: usize, k: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::InvalidConfig(why) => write!(f, "invalid generator config: {why}"),
            GenError::DomainRangeTooSmall { k, width } => {
                write!(f, "cannot draw {k} distinct domain values from a range of {width}")
            }
            GenError::GadgetTooSmall { n, m, k } => write!(
                f,
                "restricted-infeasible instances need n >= 2, m >= 2, k >= 2 (got n={n}, m={m}, k={k})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub system: System,
    pub domain: Domain,
    /// The hidden feasible assignment of a planted instance.
    pub planted: Option<Assignment>,
}

/// Dispatches on `config.family`.
pub fn generate(config: &GenConfig) -> Result<Instance, GenError> {
    match config.family {
        Family::Uniform => {
            let (system, domain) = gen_uniform(config)?;
            Ok(Instance {
                system,
                domain,
                planted: None,
            })
        }
        Family::Planted => {
            let (system, domain, planted) = gen_planted(config)?;
            Ok(Instance {
                system,
                domain,
                planted: Some(planted),
            })
        }
        Family::RestrictedInfeasible => {
            let (system, domain) = gen_restricted_infeasible(config)?;
            Ok(Instance {
                system,
                domain,
                planted: None,
            })
        }
    }
}

fn draw_domain(rng: &mut Pcg64Mcg, config: &GenConfig) -> Domain {
    let (lo, hi) = config.domain_range;
    let width = hi.abs_diff(lo) as usize + 1;
    let mut offsets = index::sample(rng, width, config.k).into_vec();
    offsets.sort_unstable();
    let values = offsets
        .into_iter()
        .map(|o| Scalar::int(lo.wrapping_add(o as i64)))
        .collect();
    Domain::new(values).expect("sampled offsets are distinct")
}

fn draw_var(rng: &mut Pcg64Mcg, n: usize) -> Var {
    Var(rng.random_range(0..n))
}

/// A pair of distinct unknowns, or `(x1, x1)` when there is only one.
fn draw_distinct_pair(rng: &mut Pcg64Mcg, n: usize) -> (Var, Var) {
    if n == 1 {
        return (Var(0), Var(0));
    }
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (Var(i), Var(j))
}

/// Uniform pairs (self-loops included) and uniform integer bounds.
pub fn gen_uniform(config: &GenConfig) -> Result<(System, Domain), GenError> {
    config.validate()?;
    let mut rng = Pcg64Mcg::seed_from_u64(config.seed);
    let domain = draw_domain(&mut rng, config);
    let (blo, bhi) = config.bound_range;
    let constraints = (0..config.m)
        .map(|_| {
            let i = draw_var(&mut rng, config.n);
            let j = draw_var(&mut rng, config.n);
            Constraint::new(i, j, rng.random_range(blo..=bhi))
        })
        .collect();
    let system = System::new(config.n, constraints).expect("drawn indices are in range");
    Ok((system, domain))
}

/// Draws a hidden assignment into the domain and emits constraints it
/// satisfies with integer slack in `[0, slack_max]`.
pub fn gen_planted(config: &GenConfig) -> Result<(System, Domain, Assignment), GenError> {
    config.validate()?;
    let mut rng = Pcg64Mcg::seed_from_u64(config.seed);
    let domain = draw_domain(&mut rng, config);
    let positions: Vec<usize> = (0..config.n)
        .map(|_| rng.random_range(0..config.k))
        .collect();
    let planted = Assignment::from_positions(&domain, positions);
    let constraints = (0..config.m)
        .map(|_| {
            let (i, j) = draw_distinct_pair(&mut rng, config.n);
            let slack = Scalar::int(rng.random_range(0..=config.slack_max));
            let b = planted.value(i) - planted.value(j) + slack;
            Constraint::new(i, j, b)
        })
        .collect();
    let system = System::new(config.n, constraints).expect("drawn indices are in range");
    Ok((system, domain, planted))
}

/// Builds a system that has a real solution but none in the domain.
///
/// Two unknowns `a`, `b` get `x_a - x_b <= -g` and `x_b - x_a <= g'` with
/// `0 < g <= g' < δ`, where `δ` is the smallest gap between consecutive domain
/// values. Distinct domain values differ by at least `δ > g'`, and equal ones
/// by `0 < g`, so no domain pair fits while `x_b = x_a + g` does. The other
/// `m - 2` constraints are slack around a real assignment extending that
/// pair.
pub fn gen_restricted_infeasible(config: &GenConfig) -> Result<(System, Domain), GenError> {
    config.validate()?;
    if config.n < 2 || config.m < 2 || config.k < 2 {
        return Err(GenError::GadgetTooSmall {
            n: config.n,
            m: config.m,
            k: config.k,
        });
    }
    let mut rng = Pcg64Mcg::seed_from_u64(config.seed);
    let domain = draw_domain(&mut rng, config);
    let gap = domain
        .values()
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("k >= 2");
    let tenths = |t: i64| &gap * &Scalar::ratio(t, 10).expect("nonzero denominator");
    let low = rng.random_range(1..=9);
    let high = rng.random_range(low..=9);
    let (g, g_wide) = (tenths(low), tenths(high));

    let (a, b) = draw_distinct_pair(&mut rng, config.n);
    let (dlo, dhi) = config.domain_range;
    let mut real: Vec<Scalar> = (0..config.n)
        .map(|_| Scalar::int(rng.random_range(dlo..=dhi)))
        .collect();
    real[b.0] = &real[a.0] + &g;

    let mut constraints: Vec<Constraint> = (0..config.m - 2)
        .map(|_| {
            let (i, j) = draw_distinct_pair(&mut rng, config.n);
            let slack = Scalar::int(rng.random_range(0..=config.slack_max));
            Constraint::new(i, j, &real[i.0] - &real[j.0] + slack)
        })
        .collect();
    let at = rng.random_range(0..=constraints.len());
    constraints.insert(at, Constraint::new(a, b, -g));
    let at = rng.random_range(0..=constraints.len());
    constraints.insert(at, Constraint::new(b, a, g_wide));

    let system = System::new(config.n, constraints).expect("drawn indices are in range");
    Ok((system, domain))
}
