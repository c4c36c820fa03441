//! Exact rational scalars.
//!
//! Bounds and domain values are compared with both `<` and `<=` by the
//! solvers, so every value is kept exact. Integers that fit in an `i64` stay
//! inline and never allocate; anything else is held as a normalized
//! [`BigRational`].

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number.
///
/// The representation is canonical: a value is stored as `Int` if and only if
/// it is an integer in the `i64` range, so structural equality is value
/// equality.
#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    Int(i64),
    Big(Box<BigRational>),
}

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Int(0));
    pub const ONE: Scalar = Scalar(Repr::Int(1));

    pub const fn int(v: i64) -> Self {
        Scalar(Repr::Int(v))
    }

    /// `numer / denom`, reduced. Returns `None` when `denom` is zero.
    pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(numer.into(), denom)))
    }

    fn from_big(r: BigRational) -> Self {
        if r.denom().is_one() {
            if let Some(v) = r.numer().to_i64() {
                return Scalar(Repr::Int(v));
            }
        }
        Scalar(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Int(v) => BigRational::from_integer(BigInt::from(*v)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    /// Numerator of the reduced fraction (carries the sign).
    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Int(v) => BigInt::from(*v),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    /// Denominator of the reduced fraction, always positive.
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Int(_) => BigInt::one(),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Int(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Int(_) => true,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => *v < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Int(0))
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::int(v.into())
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Self::from_big(v)
    }
}

impl From<Scalar> for BigRational {
    fn from(v: Scalar) -> Self {
        match v.0 {
            Repr::Int(v) => BigRational::from_integer(BigInt::from(v)),
            Repr::Big(r) => *r,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Int(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Scalar(Repr::Int(v));
                    }
                }
                Scalar::from_big(self.to_big().$method(rhs.to_big()))
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;

    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division of a Scalar by zero");
        Scalar::from_big(self.to_big() / rhs.to_big())
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;

    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        if let Repr::Int(v) = self.0 {
            if let Some(n) = v.checked_neg() {
                return Scalar(Repr::Int(n));
            }
        }
        Scalar::from_big(-self.to_big())
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ZERO, |acc, v| acc + v)
    }
}

impl<'a> core::iter::Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ZERO, |acc, v| acc + v)
    }
}

/// Writes the shortest exact decimal when the expansion terminates and
/// `p/q` otherwise.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match &self.0 {
            Repr::Int(v) => return write!(f, "{v}"),
            Repr::Big(r) => r,
        };
        if r.is_integer() {
            return write!(f, "{}", r.numer());
        }
        let denom = r.denom();
        let (twos, rest) = strip_factor(denom.clone(), 2);
        let (fives, rest) = strip_factor(rest, 5);
        if !rest.is_one() {
            return write!(f, "{}/{}", r.numer(), denom);
        }
        // denom = 2^twos * 5^fives, so denom divides 10^digits exactly
        let digits = twos.max(fives);
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let scaled = r.numer() * (scale / denom);
        let (sign, mag) = (scaled.sign(), scaled.magnitude().to_str_radix(10));
        let mag = if mag.len() <= digits {
            let mut padded = String::with_capacity(digits + 1);
            padded.extend(core::iter::repeat_n('0', digits + 1 - mag.len()));
            padded.push_str(&mag);
            padded
        } else {
            mag
        };
        let (whole, frac) = mag.split_at(mag.len() - digits);
        if sign == Sign::Minus {
            f.write_str("-")?;
        }
        write!(f, "{whole}.{frac}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn strip_factor(mut v: BigInt, p: u32) -> (usize, BigInt) {
    let p = BigInt::from(p);
    let mut count = 0;
    loop {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return (count, v);
        }
        v = q;
        count += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub literal: String,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed number `{}`", self.literal)
    }
}

/// Accepts `-?digits`, `-?digits.digits` and `-?digits/digits` (nonzero
/// denominator).
impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError { literal: s.into() };
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
        let parse_uint = |t: &str| BigInt::parse_bytes(t.as_bytes(), 10).ok_or_else(err);

        let value = if let Some((p, q)) = body.split_once('/') {
            if !digits(p) || !digits(q) {
                return Err(err());
            }
            Scalar::ratio(parse_uint(p)?, parse_uint(q)?).ok_or_else(err)?
        } else if let Some((whole, frac)) = body.split_once('.') {
            if !digits(whole) || !digits(frac) {
                return Err(err());
            }
            let scale = num_traits::pow(BigInt::from(10u32), frac.len());
            let numer = parse_uint(whole)? * &scale + parse_uint(frac)?;
            Scalar::ratio(numer, scale).ok_or_else(err)?
        } else {
            if !digits(body) {
                return Err(err());
            }
            match body.parse::<i64>() {
                Ok(v) => Scalar::int(v),
                Err(_) => Scalar::from(parse_uint(body)?),
            }
        };
        Ok(if negative { -value } else { value })
    }
}
