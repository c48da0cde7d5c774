//! Exact rationals and the extended non-negative rationals `[0, ∞]`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Parses `p/q` or a bare integer `p`. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = denom.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// Always `p/q`, including integers (`2/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A value in `[0, ∞]` with an exact rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinite,
}

impl ExtendedRational {
    pub fn zero() -> Self {
        ExtendedRational::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        ExtendedRational::Finite(Rational::one())
    }

    /// Rejects negative values.
    pub fn finite(q: Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Precondition(format!(
                "extended rational must be non-negative, got {}",
                format_rational(&q)
            )));
        }
        Ok(ExtendedRational::Finite(q))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedRational::Finite(q) if q.is_zero())
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            ExtendedRational::Infinite => None,
        }
    }

    /// Strict comparison `q < self` for a rational `q`.
    pub fn exceeds(&self, q: &Rational) -> bool {
        match self {
            ExtendedRational::Finite(v) => q < v,
            ExtendedRational::Infinite => true,
        }
    }

    /// `self - other` when both are finite.
    pub fn finite_difference(&self, other: &Self) -> Option<Rational> {
        Some(self.as_finite()? - other.as_finite()?)
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "inf" | "infinity" | "∞" => Some(ExtendedRational::Infinite),
            other => {
                let q = parse_rational(other)?;
                ExtendedRational::finite(q).ok()
            }
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(q: Rational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => a.cmp(b),
            (ExtendedRational::Finite(_), ExtendedRational::Infinite) => Ordering::Less,
            (ExtendedRational::Infinite, ExtendedRational::Finite(_)) => Ordering::Greater,
            (ExtendedRational::Infinite, ExtendedRational::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => {
                ExtendedRational::Finite(a + b)
            }
            _ => ExtendedRational::Infinite,
        }
    }
}

impl<'a> Add<&'a ExtendedRational> for &'a ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: &'a ExtendedRational) -> ExtendedRational {
        self.clone() + rhs.clone()
    }
}

impl Sum for ExtendedRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtendedRational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(q) => f.write_str(&format_rational(q)),
            ExtendedRational::Infinite => f.write_str("inf"),
        }
    }
}
