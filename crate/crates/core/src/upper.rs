//! The upper-powerspace relation `≺_U` on finite code sets and the compact
//! saturated sets `g_U(J)` that its ideals present.

use crate::chain::Chain;
use crate::ideal::{saturate, IdealChain};
use crate::relation::{Code, FiniteCodeSet, Relation, Verdict};

pub type UpperChain = Chain<FiniteCodeSet>;

/// `↑F ∩ S`: the members of `S` that have a `≺`-predecessor in `F`.
pub fn up_set(rel: &dyn Relation, from: &FiniteCodeSet, within: &FiniteCodeSet) -> FiniteCodeSet {
    within
        .iter()
        .filter(|&c| from.iter().any(|b| rel.precedes(b, c)))
        .collect()
}

/// `F ≺_U G` iff every `n ∈ G` has some `m ∈ F` with `m ≺ n`.
pub fn prec_u(rel: &dyn Relation, f: &FiniteCodeSet, g: &FiniteCodeSet) -> bool {
    g.iter().all(|n| f.iter().any(|m| rel.precedes(m, n)))
}

/// Whether some `F ≺_U G` avoids `ideal` entirely.
///
/// Such an `F` exists iff every `n ∈ G` has a predecessor outside the ideal:
/// pick one per `n`.
fn has_avoiding_cover(rel: &dyn Relation, codes: &FiniteCodeSet, g: &FiniteCodeSet, ideal: &FiniteCodeSet) -> bool {
    g.iter().all(|n: Code| {
        codes
            .iter()
            .any(|m| rel.precedes(m, n) && !ideal.contains(m))
    })
}

/// Decides `I ∈ g_U(J)`, i.e. `(∀F ∈ ↓J)(∃m ∈ I) m ∈ F`.
///
/// On finite relations with a stationary `I` each chain element is decided
/// exactly; the answer is final once a stationary `J` has been scanned to its
/// tail. Everything else reports `Unknown`.
pub fn gu_member(rel: &dyn Relation, upper: &UpperChain, point: &IdealChain, fuel: usize) -> Verdict {
    let Some(finite) = rel.finite() else {
        return Verdict::Unknown;
    };
    let Some(ideal) = saturate(finite, point) else {
        return Verdict::Unknown;
    };
    let codes = finite.code_set();
    for k in 0..fuel {
        let Some(g) = upper.get(k) else {
            return Verdict::Unknown;
        };
        if has_avoiding_cover(rel, codes, &g, &ideal) {
            return Verdict::Refuted;
        }
        if let Some(prefix) = upper.stationary_prefix() {
            if k + 1 >= prefix.len() {
                return Verdict::Confirmed;
            }
        }
    }
    Verdict::Unknown
}
