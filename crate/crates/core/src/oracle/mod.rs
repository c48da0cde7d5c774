//! Valuations as evaluators on open-set expressions, the valuation axioms as
//! checkable predicates, and the bundled example spaces.

pub mod cantor;
pub mod dirac;
pub mod finite;
pub mod line;
mod open;

use std::sync::Arc;

use num_traits::Zero;

pub use open::{CodeEnumeration, OpenExpr};

use crate::error::{Error, Result};
use crate::lower::LowerReal;
use crate::rational::{int, ExtendedRational, Rational};
use crate::relation::{subset_masks, Code, FiniteCodeSet};

pub trait Valuation: Send + Sync {
    /// Exact value on the finitely presented algebra the oracle understands.
    fn exact(&self, open: &OpenExpr) -> Result<ExtendedRational>;

    /// A rational lower bound that improves with `fuel`.
    ///
    /// The default evaluates the expression truncated to `fuel` enumerated
    /// codes and reads `∞` as `fuel`.
    fn approx(&self, open: &OpenExpr, fuel: usize) -> Rational {
        match self.exact(&open.truncate(fuel)) {
            Ok(ExtendedRational::Finite(q)) => q,
            Ok(ExtendedRational::Infinite) => int(fuel as i64),
            Err(_) => Rational::zero(),
        }
    }
}

pub type Oracle = Arc<dyn Valuation>;

/// `ν(U)` as a lower real; exact when the oracle can evaluate `U` outright.
pub fn evaluate(oracle: &Oracle, open: &OpenExpr) -> LowerReal {
    if let Ok(v) = oracle.exact(open) {
        return LowerReal::exact(v);
    }
    let oracle = Arc::clone(oracle);
    let open = open.clone();
    LowerReal::from_stream(move || {
        let oracle = Arc::clone(&oracle);
        let open = open.clone();
        let mut best = Rational::zero();
        (0..).map(move |n| {
            let q = oracle.approx(&open, n);
            if q > best {
                best = q;
            }
            best.clone()
        })
    })
}

/// `ν(∅) = 0`.
pub fn check_strictness(oracle: &dyn Valuation) -> Result<bool> {
    Ok(oracle.exact(&OpenExpr::Empty)?.is_zero())
}

/// `ν(U) + ν(V) = ν(U ∪ V) + ν(U ∩ V)`, with `∞` absorbing.
pub fn check_modularity(oracle: &dyn Valuation, u: &OpenExpr, v: &OpenExpr) -> Result<bool> {
    let lhs = oracle.exact(u)? + oracle.exact(v)?;
    let union = oracle.exact(&u.clone().union(v.clone()))?;
    let meet = oracle.exact(&u.clone().intersect(v.clone()))?;
    Ok(lhs == union + meet)
}

/// `U_G = ∩_{b∈G} [b]` and `V_G = U_G ∩ ∪_{b∈D∖G} [b]`.
pub fn ug_vg(d: &FiniteCodeSet, g: &FiniteCodeSet) -> Result<(OpenExpr, OpenExpr)> {
    if g.is_empty() {
        return Err(Error::Precondition("G must be non-empty".into()));
    }
    if !g.is_subset(d) {
        return Err(Error::Precondition(format!("{g} is not a subset of {d}")));
    }
    let u = OpenExpr::Intersect(g.iter().map(OpenExpr::Basic).collect());
    let rest = d.difference(g);
    let v = if rest.is_empty() {
        OpenExpr::Empty
    } else {
        u.clone().intersect(OpenExpr::basics(rest.iter()))
    };
    Ok((u, v))
}

/// Largest `D` accepted by [`upper_sets`].
pub const MAX_UPPER_SET_BASE: usize = 4;

/// Every upper set `P ⊆ P₊(D)`, each listed in ascending order.
pub fn upper_sets(d: &FiniteCodeSet) -> Result<Vec<Vec<FiniteCodeSet>>> {
    if d.len() > MAX_UPPER_SET_BASE {
        return Err(Error::TooManyCodes(d.len(), MAX_UPPER_SET_BASE));
    }
    let n = d.len();
    // Non-empty subsets of D as bitmasks 1..2^n; family masks select among them.
    let members: Vec<u64> = subset_masks(n).skip(1).collect();
    let elems = d.to_vec();
    let mut out = Vec::new();
    for family in subset_masks(members.len()) {
        let chosen = |m: u64| family >> (m - 1) & 1 == 1;
        let upward = members
            .iter()
            .filter(|&&m| chosen(m))
            .all(|&m| members.iter().all(|&m2| m2 & m != m || chosen(m2)));
        if upward {
            let mut p: Vec<FiniteCodeSet> = members
                .iter()
                .filter(|&&m| chosen(m))
                .map(|&m| crate::relation::select(&elems, m).collect())
                .collect();
            p.sort();
            out.push(p);
        }
    }
    Ok(out)
}

/// `Σ_{G∈P} (ν(U_G) − ν(V_G)) = ν(∪_{G∈P} U_G)`, exactly.
///
/// Every `ν(U_G)` must be finite.
pub fn sum_of_differences_check(oracle: &dyn Valuation, d: &FiniteCodeSet, p: &[FiniteCodeSet]) -> Result<bool> {
    let mut lhs = Rational::zero();
    let mut covers = Vec::with_capacity(p.len());
    for g in p {
        let (u, v) = ug_vg(d, g)?;
        let nu_u = oracle.exact(&u)?;
        let nu_v = oracle.exact(&v)?;
        let diff = nu_u
            .finite_difference(&nu_v)
            .ok_or_else(|| Error::Precondition(format!("ν(U_G) is infinite for G = {g}")))?;
        lhs += diff;
        covers.push(u);
    }
    let rhs = oracle.exact(&OpenExpr::Union(covers))?;
    Ok(rhs == ExtendedRational::Finite(lhs))
}

/// Codes of the generating set as an enumerated open.
pub fn open_of(codes: &[Code]) -> OpenExpr {
    OpenExpr::basics(codes.iter().copied())
}
