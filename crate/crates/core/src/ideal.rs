//! Ideals of a relation: membership, the brute-force ideal test, and enumeration.

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::relation::{subset_masks, Code, FiniteCodeSet, FiniteRelation, Relation, Verdict};

pub type IdealChain = Chain<Code>;

/// Largest relation accepted by [`enumerate_ideals_finite`].
pub const MAX_ENUMERATED_CODES: usize = 16;

/// Semidecides `b ∈ ↓{a_i}` using the first `fuel` chain elements.
///
/// Stationary chains present the principal ideal of their tail, so membership
/// is decided outright once the whole prefix has been scanned.
pub fn ideal_member(rel: &dyn Relation, chain: &IdealChain, b: Code, fuel: usize) -> Verdict {
    for i in 0..fuel {
        let Some(a) = chain.get(i) else {
            return Verdict::Unknown;
        };
        if a == b || rel.precedes(b, a) {
            return Verdict::Confirmed;
        }
        if let Some(prefix) = chain.stationary_prefix() {
            if i + 1 >= prefix.len() {
                return Verdict::Refuted;
            }
        }
    }
    Verdict::Unknown
}

/// The full ideal presented by a stationary chain over a finite relation.
pub fn saturate(rel: &FiniteRelation, chain: &IdealChain) -> Option<FiniteCodeSet> {
    let prefix = chain.stationary_prefix()?;
    Some(
        rel.code_set()
            .iter()
            .filter(|&c| prefix.iter().any(|&a| a == c || rel.precedes(c, a)))
            .chain(prefix.iter().copied())
            .collect(),
    )
}

/// Non-empty, lower and directed, checked exhaustively.
pub fn is_ideal_finite(rel: &FiniteRelation, set: &FiniteCodeSet) -> bool {
    if set.is_empty() || !set.is_subset(rel.code_set()) {
        return false;
    }
    let lower = set
        .iter()
        .all(|a| rel.code_set().iter().all(|b| !rel.precedes(b, a) || set.contains(b)));
    if !lower {
        return false;
    }
    set.iter().all(|a| {
        set.iter()
            .all(|b| set.iter().any(|c| rel.precedes(a, c) && rel.precedes(b, c)))
    })
}

pub fn enumerate_ideals_finite(rel: &FiniteRelation) -> Result<Vec<FiniteCodeSet>> {
    if rel.len() > MAX_ENUMERATED_CODES {
        return Err(Error::TooManyCodes(rel.len(), MAX_ENUMERATED_CODES));
    }
    let codes = rel.code_set().to_vec();
    let mut ideals: Vec<FiniteCodeSet> = subset_masks(codes.len())
        .map(|mask| crate::relation::select(&codes, mask).collect::<FiniteCodeSet>())
        .filter(|s| is_ideal_finite(rel, s))
        .collect();
    ideals.sort();
    Ok(ideals)
}

/// A stationary chain presenting `ideal`, if the ideal is principal on an idempotent code.
pub fn principal_chain(rel: &FiniteRelation, ideal: &FiniteCodeSet) -> Option<IdealChain> {
    ideal
        .iter()
        .find(|&c| rel.precedes(c, c) && ideal.iter().all(|b| b == c || rel.precedes(b, c)))
        .map(Chain::constant)
}
