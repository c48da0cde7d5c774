//! Cantor space presented by finite bit strings under the proper-prefix
//! order, with the biased coin-flip measure.
//!
//! Codes: a string of length `n` whose bits read as the binary number `v`
//! (first bit most significant) has code `2^n − 1 + v`. The empty string is
//! code 0, `0` and `1` are codes 1 and 2, `00` is 3, and so on; every code
//! below `2^127 − 1` names exactly one string.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oracle::{CodeEnumeration, OpenExpr, Valuation};
use crate::rational::{format_rational, ExtendedRational, Rational};
use crate::relation::{Code, Relation};

pub const MAX_BITS: u32 = 126;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: u32,
    bits: u128,
}

impl BitString {
    pub const EMPTY: BitString = BitString { len: 0, bits: 0 };

    pub fn new(len: u32, bits: u128) -> Result<Self> {
        if len > MAX_BITS || (len < 128 && bits >> len != 0) {
            return Err(Error::CodeOverflow);
        }
        Ok(BitString { len, bits })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit `i`, counting from the front.
    pub fn bit(&self, i: u32) -> bool {
        self.bits >> (self.len - 1 - i) & 1 == 1
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn push(&self, bit: bool) -> Result<Self> {
        BitString::new(self.len + 1, self.bits << 1 | bit as u128)
    }

    pub fn code(&self) -> Code {
        (1u128 << self.len) - 1 + self.bits
    }

    pub fn from_code(code: Code) -> Option<Self> {
        let shifted = code.checked_add(1)?;
        let len = 127 - shifted.leading_zeros();
        if len > MAX_BITS {
            return None;
        }
        Some(BitString {
            len,
            bits: shifted - (1u128 << len),
        })
    }

    /// `self` is a prefix of `other`, possibly equal.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }

    pub fn is_proper_prefix_of(&self, other: &BitString) -> bool {
        self.len < other.len && self.is_prefix_of(other)
    }

    /// All strings of length `n`.
    pub fn all_of_length(n: u32) -> impl Iterator<Item = BitString> {
        assert!(n < 64, "too many strings of length {n}");
        (0..1u128 << n).map(move |bits| BitString { len: n, bits })
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::EMPTY;
        for ch in s.chars() {
            out = match ch {
                '0' => out.push(false)?,
                '1' => out.push(true)?,
                _ => return Err(Error::Precondition(format!("not a bit string: {s:?}"))),
            };
        }
        Ok(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// `s ≺ t` iff `s` is a proper prefix of `t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PrefixRelation;

impl Relation for PrefixRelation {
    fn precedes(&self, a: Code, b: Code) -> bool {
        match (BitString::from_code(a), BitString::from_code(b)) {
            (Some(s), Some(t)) => s.is_proper_prefix_of(&t),
            _ => false,
        }
    }

    fn codes(&self) -> Box<dyn Iterator<Item = Code> + '_> {
        Box::new(0..(1u128 << (MAX_BITS + 1)) - 1)
    }
}

/// Drops every string that extends another, leaving a prefix-free cover of
/// the same union of cylinders.
pub fn prefix_free(cover: impl IntoIterator<Item = BitString>) -> Vec<BitString> {
    let mut v: Vec<BitString> = cover.into_iter().collect();
    v.sort_by_key(|s| (s.len, s.bits));
    v.dedup();
    let mut out: Vec<BitString> = Vec::with_capacity(v.len());
    for s in v {
        if !out.iter().any(|t| t.is_prefix_of(&s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

fn intersect_covers(x: &[BitString], y: &[BitString]) -> Vec<BitString> {
    let mut out = Vec::new();
    for s in x {
        for t in y {
            // Two cylinders meet only when one string extends the other.
            if s.is_prefix_of(t) {
                out.push(*t);
            } else if t.is_prefix_of(s) {
                out.push(*s);
            }
        }
    }
    prefix_free(out)
}

/// Each bit is 0 with probability `p` and 1 with probability `1 − p`.
#[derive(Clone, Debug)]
pub struct CantorCoin {
    bias: Rational,
}

impl CantorCoin {
    pub fn new(bias: Rational) -> Result<Self> {
        if bias <= Rational::zero() || bias >= Rational::one() {
            return Err(Error::Bias(format_rational(&bias)));
        }
        Ok(CantorCoin { bias })
    }

    pub fn bias(&self) -> &Rational {
        &self.bias
    }

    pub fn cylinder(&self, s: &BitString) -> Rational {
        let zero = &self.bias;
        let one = Rational::one() - zero;
        let zeros = s.len() - s.ones();
        num_traits::pow(zero.clone(), zeros as usize) * num_traits::pow(one, s.ones() as usize)
    }

    /// Measure of the union of cylinders.
    pub fn cover(&self, cover: impl IntoIterator<Item = BitString>) -> Rational {
        prefix_free(cover)
            .iter()
            .fold(Rational::zero(), |acc, s| acc + self.cylinder(s))
    }

    /// The open as a prefix-free cover.
    pub fn normal_form(&self, open: &OpenExpr) -> Result<Vec<BitString>> {
        Ok(match open {
            OpenExpr::Empty => Vec::new(),
            OpenExpr::Basic(c) => basic_cover(*c),
            OpenExpr::Union(parts) => {
                let mut all = Vec::new();
                for p in parts {
                    all.extend(self.normal_form(p)?);
                }
                prefix_free(all)
            }
            OpenExpr::Intersect(parts) => {
                let mut acc = vec![BitString::EMPTY];
                for p in parts {
                    acc = intersect_covers(&acc, &self.normal_form(p)?);
                }
                acc
            }
            OpenExpr::Enumerated(CodeEnumeration::Finite(codes)) => {
                prefix_free(codes.iter().flat_map(|&c| basic_cover(c)))
            }
            OpenExpr::Enumerated(CodeEnumeration::Generated(_)) => return Err(Error::NotExact),
        })
    }
}

fn basic_cover(code: Code) -> Vec<BitString> {
    BitString::from_code(code).into_iter().collect()
}

impl Valuation for CantorCoin {
    fn exact(&self, open: &OpenExpr) -> Result<ExtendedRational> {
        let cover = self.normal_form(open)?;
        Ok(ExtendedRational::Finite(
            cover.iter().fold(Rational::zero(), |acc, s| acc + self.cylinder(s)),
        ))
    }
}

pub fn cantor_coin(bias: Rational) -> Result<(Arc<PrefixRelation>, CantorCoin)> {
    Ok((Arc::new(PrefixRelation), CantorCoin::new(bias)?))
}
