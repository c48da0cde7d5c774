//! The real line presented by open rational intervals, and Lebesgue measure.
//!
//! Codes: a rational `p/q` in lowest terms (`q > 0`) is `⟨zigzag(p), q − 1⟩`,
//! and an interval `(a, b)` with `a < b` is `⟨code(a), code(b)⟩`, where
//! `⟨x, y⟩ = (x + y)(x + y + 1)/2 + y` is the Cantor pairing and
//! `zigzag(p)` is `2p` for `p ≥ 0` and `−2p − 1` otherwise. The encoding is
//! injective; codes that do not decode to an interval relate to nothing.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::oracle::{CodeEnumeration, OpenExpr, Valuation};
use crate::rational::{int, ExtendedRational, Rational};
use crate::relation::{Code, Relation};

/// Interval codes stay below this bound so that decoding never overflows.
const CODE_LIMIT: Code = 1 << 124;

fn pair(x: Code, y: Code) -> Option<Code> {
    let s = x.checked_add(y)?;
    let t = s.checked_mul(s.checked_add(1)?)? / 2;
    t.checked_add(y).filter(|&c| c < CODE_LIMIT)
}

fn unpair(z: Code) -> Option<(Code, Code)> {
    if z >= CODE_LIMIT {
        return None;
    }
    let w = ((8 * z + 1).isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = z - t;
    Some((w - y, y))
}

pub fn encode_rational(q: &Rational) -> Result<Code> {
    let p = q.numer();
    let zig: BigInt = if p.is_negative() { -p * 2 - 1 } else { p * 2 };
    let zig = zig.to_u128().ok_or(Error::CodeOverflow)?;
    let den = (q.denom() - BigInt::from(1)).to_u128().ok_or(Error::CodeOverflow)?;
    pair(zig, den).ok_or(Error::CodeOverflow)
}

pub fn decode_rational(code: Code) -> Option<Rational> {
    let (zig, den) = unpair(code)?;
    let p = if zig % 2 == 0 {
        BigInt::from(zig / 2)
    } else {
        -BigInt::from(zig / 2) - 1
    };
    let q = BigInt::from(den) + BigInt::from(1);
    // Only lowest-terms pairs are valid.
    let r = Rational::new(p.clone(), q.clone());
    (r.numer() == &p && r.denom() == &q).then_some(r)
}

pub fn encode_interval(a: &Rational, b: &Rational) -> Result<Code> {
    if a >= b {
        return Err(Error::Precondition(format!("empty interval ({a}, {b})")));
    }
    pair(encode_rational(a)?, encode_rational(b)?).ok_or(Error::CodeOverflow)
}

pub fn decode_interval(code: Code) -> Option<(Rational, Rational)> {
    let (x, y) = unpair(code)?;
    let a = decode_rational(x)?;
    let b = decode_rational(y)?;
    (a < b).then_some((a, b))
}

/// `(a, b) ≺ (c, d)` iff `a < c < d < b`: strict inner containment.
#[derive(Clone, Copy, Debug, Default)]
pub struct LineRelation;

impl Relation for LineRelation {
    fn precedes(&self, x: Code, y: Code) -> bool {
        match (decode_interval(x), decode_interval(y)) {
            (Some((a, b)), Some((c, d))) => a < c && d < b,
            _ => false,
        }
    }

    fn codes(&self) -> Box<dyn Iterator<Item = Code> + '_> {
        Box::new((0..CODE_LIMIT).filter(|&c| decode_interval(c).is_some()))
    }
}

/// A finite union of open intervals, sorted and pairwise disjoint, or the whole line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Whole,
    Intervals(Vec<(Rational, Rational)>),
}

impl Region {
    pub fn empty() -> Self {
        Region::Intervals(Vec::new())
    }

    fn normalize(mut v: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
        v.retain(|(a, b)| a < b);
        v.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                // Overlapping open intervals merge; touching ones stay apart.
                Some((_, hi)) if a < *hi => {
                    if b > *hi {
                        *hi = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        out
    }

    pub fn union(self, other: Region) -> Region {
        match (self, other) {
            (Region::Whole, _) | (_, Region::Whole) => Region::Whole,
            (Region::Intervals(mut x), Region::Intervals(y)) => {
                x.extend(y);
                Region::Intervals(Self::normalize(x))
            }
        }
    }

    pub fn intersect(self, other: Region) -> Region {
        match (self, other) {
            (Region::Whole, r) | (r, Region::Whole) => r,
            (Region::Intervals(x), Region::Intervals(y)) => {
                let mut out = Vec::new();
                for (a, b) in &x {
                    for (c, d) in &y {
                        out.push((a.max(c).clone(), b.min(d).clone()));
                    }
                }
                Region::Intervals(Self::normalize(out))
            }
        }
    }

    pub fn length(&self) -> ExtendedRational {
        match self {
            Region::Whole => ExtendedRational::Infinite,
            Region::Intervals(v) => ExtendedRational::Finite(
                v.iter().fold(Rational::zero(), |acc, (a, b)| acc + (b - a)),
            ),
        }
    }
}

/// Lebesgue measure on the line, optionally restricted to a window.
#[derive(Clone, Debug)]
pub struct Lebesgue {
    window: Option<(Rational, Rational)>,
}

impl Lebesgue {
    /// `ν(U) = length(U ∩ (0, 1))`.
    pub fn unit() -> Self {
        Lebesgue {
            window: Some((int(0), int(1))),
        }
    }

    /// Plain length; the whole line has measure `∞`.
    pub fn unclipped() -> Self {
        Lebesgue { window: None }
    }

    pub fn region(&self, open: &OpenExpr) -> Result<Region> {
        Ok(match open {
            OpenExpr::Empty => Region::empty(),
            OpenExpr::Basic(c) => basic_region(*c),
            OpenExpr::Union(parts) => {
                let mut r = Region::empty();
                for p in parts {
                    r = r.union(self.region(p)?);
                }
                r
            }
            OpenExpr::Intersect(parts) => {
                let mut r = Region::Whole;
                for p in parts {
                    r = r.intersect(self.region(p)?);
                }
                r
            }
            OpenExpr::Enumerated(CodeEnumeration::Finite(codes)) => codes
                .iter()
                .fold(Region::empty(), |r, &c| r.union(basic_region(c))),
            OpenExpr::Enumerated(CodeEnumeration::Generated(_)) => return Err(Error::NotExact),
        })
    }
}

fn basic_region(code: Code) -> Region {
    match decode_interval(code) {
        Some(iv) => Region::Intervals(vec![iv]),
        None => Region::empty(),
    }
}

impl Valuation for Lebesgue {
    fn exact(&self, open: &OpenExpr) -> Result<ExtendedRational> {
        let region = self.region(open)?;
        Ok(match &self.window {
            Some((lo, hi)) => region
                .intersect(Region::Intervals(vec![(lo.clone(), hi.clone())]))
                .length(),
            None => region.length(),
        })
    }
}

/// The line relation with Lebesgue measure clipped to `(0, 1)`.
pub fn lebesgue_line() -> (Arc<LineRelation>, Lebesgue) {
    (Arc::new(LineRelation), Lebesgue::unit())
}
