//! `f_V`: from a valuation to the ideal of simple valuations strictly below it.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::oracle::{ug_vg, OpenExpr, Valuation};
use crate::rational::{int, midpoint, ExtendedRational, Rational};
use crate::relation::{check_guard, Code, FiniteCodeSet, FiniteRelation, Relation, Verdict};
use crate::simple::{SimpleValuation, ValuationChain};

/// Semidecides `r ∈ f_V(ν)`: `Σ_F r < ν(∪_{b∈F} [b])` for every non-empty
/// `F ⊆ dom(r)`.
///
/// Exact oracles decide every inequality. Otherwise an inequality is
/// confirmed once some approximation within `fuel` clears it, and the answer
/// is never `Refuted`.
pub fn fv_member(oracle: &dyn Valuation, r: &SimpleValuation, fuel: usize, guard: usize) -> Result<Verdict> {
    check_guard(r.len(), guard)?;
    let mut out = Verdict::Confirmed;
    for f in r.dom().nonempty_subsets() {
        let sum = r.mass_over(&f);
        let open = OpenExpr::basics(f.iter());
        match oracle.exact(&open) {
            Ok(v) => {
                if !v.exceeds(&sum) {
                    return Ok(Verdict::Refuted);
                }
            }
            Err(Error::NotExact) => {
                if !(0..=fuel).any(|n| oracle.approx(&open, n) > sum) {
                    out = Verdict::Unknown;
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// [`fv_member`] for exact oracles.
pub fn is_fv_member(oracle: &dyn Valuation, r: &SimpleValuation, guard: usize) -> Result<bool> {
    match fv_member(oracle, r, 0, guard)? {
        Verdict::Unknown => Err(Error::NotExact),
        v => Ok(v.is_confirmed()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeBranch {
    /// `ν(U_G) = ν(V_G)`: nothing is placed for this `G`.
    Equal,
    /// Some `c ∈ C` has `ν([c]) = ∞` and receives weight `M`.
    Infinite(Code),
    /// The first `n0 + 1` codes of `C` reached the mass threshold.
    Finite { n0: usize },
}

/// What the merge placed for one non-empty `G ⊆ D`.
#[derive(Clone, Debug)]
pub struct MergePart {
    pub g: FiniteCodeSet,
    pub branch: MergeBranch,
    /// `C = {c | ∀b∈D: b ≺ c ⟺ b ∈ G}`, in ascending order.
    pub candidates: Vec<Code>,
    pub h: FiniteCodeSet,
    pub weights: SimpleValuation,
}

#[derive(Clone, Debug)]
pub struct MergeParams {
    pub alpha: Rational,
    pub m: Rational,
    pub d: FiniteCodeSet,
    pub parts: Vec<MergePart>,
}

#[derive(Clone, Debug)]
pub struct Merge {
    pub upper: SimpleValuation,
    pub params: MergeParams,
}

/// The scaling factor `α = 1/(1 + β/2)`, where `β` is the least relative
/// slack `(β_F − Σ_F r_i)/Σ_F r_i` over both inputs and `β_F` is the midpoint
/// of `(Σ_F r_i, ν(∪F))`, or `Σ_F r_i + 1` when `ν(∪F) = ∞`.
///
/// With no non-empty `F` at all the constraint set is empty and `α = 1/2`.
fn scaling_factor(oracle: &dyn Valuation, inputs: [&SimpleValuation; 2]) -> Result<Rational> {
    let mut beta: Option<Rational> = None;
    for r in inputs {
        for f in r.dom().nonempty_subsets() {
            let sum = r.mass_over(&f);
            let bound = match oracle.exact(&OpenExpr::basics(f.iter()))? {
                ExtendedRational::Infinite => &sum + int(1),
                ExtendedRational::Finite(v) => midpoint(&sum, &v),
            };
            let slack = (bound - &sum) / &sum;
            if beta.as_ref().is_none_or(|b| &slack < b) {
                beta = Some(slack);
            }
        }
    }
    Ok(match beta {
        Some(b) => Rational::one() / (Rational::one() + b / int(2)),
        None => Rational::new(1.into(), 2.into()),
    })
}

/// Builds `s` with `r0 ≺_V s`, `r1 ≺_V s` and `s ∈ f_V(ν)`, following the
/// cell decomposition of `D = dom(r0) ∪ dom(r1)` into the regions `U_G ∖ V_G`.
///
/// Requires an exact oracle on a finite relation, and both inputs in `f_V(ν)`.
pub fn fv_directed_merge(
    rel: &FiniteRelation,
    oracle: &dyn Valuation,
    r0: &SimpleValuation,
    r1: &SimpleValuation,
    guard: usize,
) -> Result<Merge> {
    for (name, r) in [("r0", r0), ("r1", r1)] {
        if !is_fv_member(oracle, r, guard)? {
            return Err(Error::Precondition(format!("{name} = {r} is not in f_V(ν)")));
        }
    }
    let alpha = scaling_factor(oracle, [r0, r1])?;
    let m = Rational::one() + r0.total() + r1.total();
    let d = r0.dom().union(&r1.dom());
    check_guard(d.len(), guard)?;
    let half_up = (Rational::one() + &alpha) / int(2);

    let mut parts = Vec::new();
    for g in d.nonempty_subsets() {
        let (u, v) = ug_vg(&d, &g)?;
        let nu_u = oracle.exact(&u)?;
        let nu_v = oracle.exact(&v)?;
        let candidates: Vec<Code> = rel
            .code_set()
            .iter()
            .filter(|&c| d.iter().all(|b| rel.precedes(b, c) == g.contains(b)))
            .collect();
        let mut part = MergePart {
            g: g.clone(),
            branch: MergeBranch::Equal,
            candidates: candidates.clone(),
            h: FiniteCodeSet::new(),
            weights: SimpleValuation::empty(),
        };
        if nu_u == nu_v {
            parts.push(part);
            continue;
        }
        if candidates.is_empty() {
            return Err(Error::Precondition(format!(
                "no code lies exactly above {g} within {d}, yet ν(U_G) > ν(V_G)"
            )));
        }
        let mut infinite = None;
        for &c in &candidates {
            if oracle.exact(&OpenExpr::Basic(c))?.is_infinite() {
                infinite = Some(c);
                break;
            }
        }
        if let Some(c) = infinite {
            part.branch = MergeBranch::Infinite(c);
            part.h = FiniteCodeSet::singleton(c);
            part.weights = SimpleValuation::single(c, m.clone())?;
            parts.push(part);
            continue;
        }
        let target = match nu_u.finite_difference(&nu_v) {
            Some(delta) => &alpha * delta,
            // Finitely many cells of finite measure cannot cover an infinite U_G.
            None => {
                return Err(Error::Precondition(format!(
                    "ν(U_G) = ∞ for G = {g} but every ν([c]) is finite"
                )))
            }
        };
        let mut cumulative = Rational::zero();
        let mut entries = Vec::new();
        let mut n0 = None;
        for (i, &c) in candidates.iter().enumerate() {
            let earlier: Vec<OpenExpr> = candidates[..i].iter().map(|&k| OpenExpr::Basic(k)).collect();
            let covered = OpenExpr::Union(earlier).union(v.clone());
            let whole = oracle.exact(&OpenExpr::Basic(c))?;
            let overlap = oracle.exact(&OpenExpr::Basic(c).intersect(covered))?;
            let p = whole.finite_difference(&overlap).ok_or(Error::NotExact)?;
            cumulative += &p;
            if p > Rational::zero() {
                entries.push((c, midpoint(&(&half_up * &p), &p)));
            }
            if &half_up * &cumulative >= target {
                n0 = Some(i);
                break;
            }
        }
        let Some(n0) = n0 else {
            return Err(Error::Precondition(format!(
                "cells above {g} never reach the mass of U_G ∖ V_G"
            )));
        };
        part.branch = MergeBranch::Finite { n0 };
        part.h = entries.iter().map(|(c, _)| *c).collect();
        part.weights = SimpleValuation::new(entries)?;
        parts.push(part);
    }
    let upper = SimpleValuation::disjoint_union(parts.iter().map(|p| p.weights.clone()));
    Ok(Merge {
        upper,
        params: MergeParams { alpha, m, d, parts },
    })
}

/// Enumerates every element of `B` over the given codes exactly once.
///
/// Stage `N` lists, in a fixed order, the valuations whose cost is `N`, where
/// an entry `c ↦ p/q` (lowest terms) costs `index(c) + 1 + p + q`. Every
/// stage is finite and every valuation has a cost, so all of `B` appears.
pub fn enumerate_b(codes: Vec<Code>) -> impl Iterator<Item = SimpleValuation> + Send {
    let nonempty = !codes.is_empty();
    (1usize..)
        .take_while(move |_| nonempty)
        .flat_map(move |cost| {
            let mut out = Vec::new();
            let mut current = Vec::new();
            stage(&codes, 0, cost, &mut current, &mut out);
            out
        })
}

fn stage(codes: &[Code], i: usize, remaining: usize, current: &mut Vec<(Code, Rational)>, out: &mut Vec<SimpleValuation>) {
    if i == codes.len() {
        if remaining == 0 && !current.is_empty() {
            out.push(SimpleValuation::new(current.iter().cloned()).expect("positive weights"));
        }
        return;
    }
    stage(codes, i + 1, remaining, current, out);
    let base = i + 1;
    for used in base + 2..=remaining {
        let budget = used - base;
        for p in 1..budget {
            let q = budget - p;
            if p.gcd(&q) != 1 {
                continue;
            }
            current.push((codes[i], Rational::new((p as i64).into(), (q as i64).into())));
            stage(codes, i + 1, remaining - used, current, out);
            current.pop();
        }
    }
}

/// A `≺_V`-chain presenting `f_V(ν)` for an exact oracle on a finite relation.
///
/// Starts at `∅` and folds each enumerated element of `B` in with the
/// directed merge: `s_{k+1} = merge(s_k, t_k)` when `t_k ∈ f_V(ν)` and
/// `merge(s_k, ∅)` otherwise. Every member of `f_V(ν)` is eventually below
/// some `s_k`.
pub fn fv_chain(rel: Arc<FiniteRelation>, oracle: Arc<dyn Valuation>, guard: usize) -> Result<ValuationChain> {
    check_guard(rel.len(), guard)?;
    oracle.exact(&OpenExpr::Empty)?;
    let mut candidates = enumerate_b(rel.code_set().to_vec());
    let mut current: Option<SimpleValuation> = None;
    let steps = std::iter::from_fn(move || {
        let next = match &current {
            None => SimpleValuation::empty(),
            Some(s) => {
                let t = candidates
                    .next()
                    .filter(|t| is_fv_member(oracle.as_ref(), t, guard).unwrap_or(false))
                    .unwrap_or_default();
                // An error here means the oracle is not a valuation; the chain ends.
                fv_directed_merge(&rel, oracle.as_ref(), s, &t, guard).ok()?.upper
            }
        };
        current = Some(next.clone());
        Some(next)
    });
    Ok(Chain::lazy(steps))
}
