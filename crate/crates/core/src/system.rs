//! Systems of difference constraints, value domains and assignments.
//!
//! Unknowns and constraint positions are 0-based in memory. Everything that
//! faces a user (text formats, `Display`) is 1-based, so `Var(0)` prints as
//! `x1`.

use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// An unknown, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Var {
    /// Panics on `0`.
    pub fn from_one_based(index: usize) -> Var {
        assert!(index >= 1, "unknowns are numbered from 1");
        Var(index - 1)
    }

    pub fn one_based(self) -> usize {
        self.0 + 1
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.one_based())
    }
}

/// `x_i - x_j <= b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub i: Var,
    pub j: Var,
    pub b: Scalar,
}

impl Constraint {
    pub fn new(i: Var, j: Var, b: impl Into<Scalar>) -> Self {
        Constraint { i, j, b: b.into() }
    }

    pub fn is_self_loop(&self) -> bool {
        self.i == self.j
    }

    /// `lhs - rhs <= b` for `lhs = s(x_i)`, `rhs = s(x_j)`.
    pub fn holds(&self, lhs: &Scalar, rhs: &Scalar) -> bool {
        lhs - rhs <= self.b
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {} <= {}", self.i, self.j, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemError {
    /// `position` is 0-based, `index` is the offending 1-based unknown.
    IndexOutOfRange {
        position: usize,
        index: usize,
        n: usize,
    },
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemError::IndexOutOfRange { position, index, n } => write!(
                f,
                "constraint {}: index {index} out of range [1, {n}]",
                position + 1
            ),
        }
    }
}

/// A set of `n` unknowns and an ordered list of constraints over them.
///
/// Duplicates and self-loops are kept as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    n: usize,
    constraints: Vec<Constraint>,
}

impl System {
    pub fn new(n: usize, constraints: Vec<Constraint>) -> Result<Self, SystemError> {
        for (position, c) in constraints.iter().enumerate() {
            for v in [c.i, c.j] {
                if v.0 >= n {
                    return Err(SystemError::IndexOutOfRange {
                        position,
                        index: v.one_based(),
                        n,
                    });
                }
            }
        }
        Ok(System { n, constraints })
    }

    /// Builds a system from 1-based `(i, j, b)` triples.
    pub fn from_triples<B: Into<Scalar> + Clone>(
        n: usize,
        triples: &[(usize, usize, B)],
    ) -> Result<Self, SystemError> {
        let mut constraints = Vec::with_capacity(triples.len());
        for (position, (i, j, b)) in triples.iter().enumerate() {
            for &index in [i, j] {
                if index == 0 || index > n {
                    return Err(SystemError::IndexOutOfRange { position, index, n });
                }
            }
            constraints.push(Constraint::new(Var(i - 1), Var(j - 1), b.clone()));
        }
        Ok(System { n, constraints })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, position: usize) -> &Constraint {
        &self.constraints[position]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.n).map(Var)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainError {
    Empty,
    /// `position` is the 0-based index of the first value not greater than its
    /// predecessor.
    NotIncreasing {
        position: usize,
    },
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::Empty => f.write_str("domain must contain at least one value"),
            DomainError::NotIncreasing { position } => {
                write!(
                    f,
                    "domain not strictly increasing at value {}",
                    position + 1
                )
            }
        }
    }
}

/// The finite value set `d_1 < ... < d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    values: Vec<Scalar>,
}

impl Domain {
    pub fn new(values: Vec<Scalar>) -> Result<Self, DomainError> {
        if values.is_empty() {
            return Err(DomainError::Empty);
        }
        if let Some(w) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(DomainError::NotIncreasing { position: w + 1 });
        }
        Ok(Domain { values })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self, DomainError> {
        Self::new(values.iter().copied().map(Scalar::int).collect())
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, position: usize) -> &Scalar {
        &self.values[position]
    }

    pub fn min(&self) -> &Scalar {
        &self.values[0]
    }

    pub fn max(&self) -> &Scalar {
        &self.values[self.values.len() - 1]
    }

    pub fn position_of(&self, value: &Scalar) -> Option<usize> {
        self.values.binary_search(value).ok()
    }

    pub fn contains(&self, value: &Scalar) -> bool {
        self.position_of(value).is_some()
    }

    /// Position of `max{d in D | d <= bound}`, or `None` when `d_1 > bound`.
    pub fn predecessor(&self, bound: &Scalar) -> Option<usize> {
        domain_predecessor(self, bound)
    }
}

/// Position of the largest domain value not exceeding `bound`, or `None` when
/// every value exceeds it.
pub fn domain_predecessor(domain: &Domain, bound: &Scalar) -> Option<usize> {
    let above = domain.values.partition_point(|d| d <= bound);
    above.checked_sub(1)
}

/// A value for every unknown, optionally tied to positions in a [`Domain`].
#[derive(Debug, Clone)]
pub struct Assignment {
    values: Vec<Scalar>,
    positions: Option<Vec<usize>>,
}

impl Assignment {
    pub fn new(values: Vec<Scalar>) -> Self {
        Assignment {
            values,
            positions: None,
        }
    }

    /// Assignment restricted to `domain`, given as positions into it.
    pub fn from_positions(domain: &Domain, positions: Vec<usize>) -> Self {
        let values = positions.iter().map(|&p| domain.get(p).clone()).collect();
        Assignment {
            values,
            positions: Some(positions),
        }
    }

    /// Every unknown at `d_k`.
    pub fn top(domain: &Domain, n: usize) -> Self {
        Self::from_positions(domain, alloc::vec![domain.k() - 1; n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, v: Var) -> &Scalar {
        &self.values[v.0]
    }

    pub fn positions(&self) -> Option<&[usize]> {
        self.positions.as_deref()
    }

    /// Attaches domain positions; fails with the first unknown whose value is
    /// not in `domain`.
    pub fn restrict_to(&self, domain: &Domain) -> Result<Assignment, Var> {
        let positions = self
            .values
            .iter()
            .enumerate()
            .map(|(v, value)| domain.position_of(value).ok_or(Var(v)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Assignment {
            values: self.values.clone(),
            positions: Some(positions),
        })
    }

    /// `self(x) <= other(x)` for every unknown.
    pub fn le_pointwise(&self, other: &Assignment) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }
}

/// Two assignments are equal when they give every unknown the same value;
/// the attached domain positions do not take part.
impl PartialEq for Assignment {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for Assignment {}

/// Per-unknown constraint lists: `outgoing(i)` holds the positions of
/// constraints `x_i - x_j <= b`, `incoming(i)` those of `x_j - x_i <= b`.
///
/// Stored as two compressed adjacency arrays. Positions inside each list keep
/// input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintIndex {
    out_start: Vec<usize>,
    out_list: Vec<usize>,
    in_start: Vec<usize>,
    in_list: Vec<usize>,
}

impl ConstraintIndex {
    pub fn outgoing(&self, v: Var) -> &[usize] {
        &self.out_list[self.out_start[v.0]..self.out_start[v.0 + 1]]
    }

    pub fn incoming(&self, v: Var) -> &[usize] {
        &self.in_list[self.in_start[v.0]..self.in_start[v.0 + 1]]
    }

    pub fn n(&self) -> usize {
        self.out_start.len() - 1
    }
}

/// Builds both adjacency arrays with a counting pass, in `O(n + m)`.
pub fn build_index(system: &System) -> ConstraintIndex {
    let n = system.n();
    let mut out_start = alloc::vec![0usize; n + 1];
    let mut in_start = alloc::vec![0usize; n + 1];
    for c in system.constraints() {
        out_start[c.i.0 + 1] += 1;
        in_start[c.j.0 + 1] += 1;
    }
    for v in 0..n {
        out_start[v + 1] += out_start[v];
        in_start[v + 1] += in_start[v];
    }
    let m = system.m();
    let mut out_list = alloc::vec![0usize; m];
    let mut in_list = alloc::vec![0usize; m];
    let mut out_fill = out_start.clone();
    let mut in_fill = in_start.clone();
    for (position, c) in system.constraints().iter().enumerate() {
        out_list[out_fill[c.i.0]] = position;
        out_fill[c.i.0] += 1;
        in_list[in_fill[c.j.0]] = position;
        in_fill[c.j.0] += 1;
    }
    ConstraintIndex {
        out_start,
        out_list,
        in_start,
        in_list,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    /// 0-based positions of unsatisfied constraints, in input order.
    pub violated: Vec<usize>,
    pub satisfied_count: usize,
}

impl ViolationReport {
    pub fn is_feasible(&self) -> bool {
        self.violated.is_empty()
    }
}

/// Checks every constraint against `assignment`.
///
/// Panics if `assignment` does not cover all unknowns of `system`.
pub fn evaluate(system: &System, assignment: &Assignment) -> ViolationReport {
    assert_eq!(
        assignment.len(),
        system.n(),
        "assignment must cover every unknown"
    );
    let violated: Vec<usize> = system
        .constraints()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.holds(assignment.value(c.i), assignment.value(c.j)))
        .map(|(position, _)| position)
        .collect();
    ViolationReport {
        satisfied_count: system.m() - violated.len(),
        violated,
    }
}
