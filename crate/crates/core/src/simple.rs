//! Simple valuations: finite maps from codes to strictly positive rationals,
//! ordered by the decidable relation `≺_V`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::relation::{check_guard, subset_masks, Code, FiniteCodeSet, Relation};

/// Default bound on `|dom(r)|` for the exponential subset loops.
pub const DEFAULT_GUARD: usize = 20;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleValuation {
    weights: BTreeMap<Code, Rational>,
}

pub type ValuationChain = Chain<SimpleValuation>;

impl SimpleValuation {
    pub fn empty() -> Self {
        SimpleValuation::default()
    }

    /// Rejects zero or negative weights; a repeated code keeps the last weight.
    pub fn new(entries: impl IntoIterator<Item = (Code, Rational)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (code, w) in entries {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight { code });
            }
            weights.insert(code, w);
        }
        Ok(SimpleValuation { weights })
    }

    pub fn single(code: Code, weight: Rational) -> Result<Self> {
        Self::new([(code, weight)])
    }

    pub fn dom(&self) -> FiniteCodeSet {
        self.weights.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, code: Code) -> Option<&Rational> {
        self.weights.get(&code)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Code, &Rational)> {
        self.weights.iter().map(|(&c, w)| (c, w))
    }

    pub fn total(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// `Σ_{b ∈ F ∩ dom(r)} r(b)`.
    pub fn mass_over(&self, set: &FiniteCodeSet) -> Rational {
        self.iter()
            .filter(|(c, _)| set.contains(*c))
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    /// `r|_A`.
    pub fn restrict(&self, set: &FiniteCodeSet) -> SimpleValuation {
        self.restrict_by(|c| set.contains(c))
    }

    pub fn restrict_by(&self, mut keep: impl FnMut(Code) -> bool) -> SimpleValuation {
        SimpleValuation {
            weights: self
                .weights
                .iter()
                .filter(|(&c, _)| keep(c))
                .map(|(&c, w)| (c, w.clone()))
                .collect(),
        }
    }

    /// Combines valuations with disjoint domains.
    pub(crate) fn disjoint_union(parts: impl IntoIterator<Item = SimpleValuation>) -> Self {
        let mut weights = BTreeMap::new();
        for part in parts {
            for (c, w) in part.weights {
                let prev = weights.insert(c, w);
                debug_assert!(prev.is_none(), "code {c} assigned twice");
            }
        }
        SimpleValuation { weights }
    }
}

impl fmt::Debug for SimpleValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SimpleValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (c, w)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}: {}", format_rational(w))?;
        }
        f.write_str("}")
    }
}

/// `r ≺_V s`: for every non-empty `F ⊆ dom(r)`,
/// `Σ_{b∈F} r(b) < Σ_{c ∈ ↑F ∩ dom(s)} s(c)`.
pub fn prec_v(rel: &dyn Relation, r: &SimpleValuation, s: &SimpleValuation, guard: usize) -> Result<bool> {
    check_guard(r.len(), guard)?;
    let lower: Vec<(Code, &Rational)> = r.iter().collect();
    let upper: Vec<(Code, &Rational)> = s.iter().collect();
    // above[i][j]: lower[i] ≺ upper[j]
    let above: Vec<Vec<bool>> = lower
        .iter()
        .map(|&(b, _)| upper.iter().map(|&(c, _)| rel.precedes(b, c)).collect())
        .collect();
    for mask in subset_masks(lower.len()).skip(1) {
        let mut below_sum = Rational::zero();
        let mut covered = vec![false; upper.len()];
        for (i, &(_, w)) in lower.iter().enumerate() {
            if mask >> i & 1 == 1 {
                below_sum += w;
                for (j, hit) in above[i].iter().enumerate() {
                    covered[j] |= *hit;
                }
            }
        }
        let above_sum = upper
            .iter()
            .zip(&covered)
            .filter(|(_, &hit)| hit)
            .fold(Rational::zero(), |acc, (&(_, w), _)| acc + w);
        if below_sum >= above_sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds `s` in the ideal with `r ≺_V s` and `dom(r) ≺_U dom(s)`.
///
/// Searches the first `fuel` chain elements for some `t` with `r ≺_V t`, then
/// keeps only the part of `t` lying above `dom(r)`. Returns `None` when no such
/// `t` turns up within fuel.
pub fn refine_in_ideal(
    rel: &dyn Relation,
    chain: &ValuationChain,
    r: &SimpleValuation,
    fuel: usize,
    guard: usize,
) -> Result<Option<SimpleValuation>> {
    let dom_r = r.dom();
    for i in 0..fuel {
        let Some(t) = chain.get(i) else { break };
        if prec_v(rel, r, &t, guard)? {
            return Ok(Some(t.restrict_by(|c| dom_r.iter().any(|b| rel.precedes(b, c)))));
        }
    }
    Ok(None)
}
