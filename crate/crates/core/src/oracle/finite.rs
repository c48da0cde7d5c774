//! Exact valuations on finite relations: a mass for each ideal.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals_finite, is_ideal_finite};
use crate::oracle::{CodeEnumeration, OpenExpr, Valuation};
use crate::rational::ExtendedRational;
use crate::relation::{subset_masks, Code, FiniteCodeSet, FiniteRelation};

/// `ν(U) = Σ {mass(I) | I ∈ U}` over the finitely many ideals of a relation.
#[derive(Clone, Debug)]
pub struct FiniteValuation {
    rel: Arc<FiniteRelation>,
    ideals: Vec<FiniteCodeSet>,
    masses: Vec<ExtendedRational>,
}

pub fn make_finite_valuation(
    rel: Arc<FiniteRelation>,
    point_masses: impl IntoIterator<Item = (FiniteCodeSet, ExtendedRational)>,
) -> Result<FiniteValuation> {
    let ideals = enumerate_ideals_finite(&rel)?;
    let mut masses = vec![ExtendedRational::zero(); ideals.len()];
    for (ideal, mass) in point_masses {
        if !is_ideal_finite(&rel, &ideal) {
            return Err(Error::NotAnIdeal(ideal.to_string()));
        }
        let i = ideals.binary_search(&ideal).expect("enumerated");
        masses[i] = mass;
    }
    Ok(FiniteValuation { rel, ideals, masses })
}

/// The point mass at one ideal.
pub fn finite_dirac(rel: Arc<FiniteRelation>, ideal: FiniteCodeSet) -> Result<FiniteValuation> {
    make_finite_valuation(rel, [(ideal, ExtendedRational::one())])
}

impl FiniteValuation {
    pub fn relation(&self) -> &Arc<FiniteRelation> {
        &self.rel
    }

    pub fn ideals(&self) -> &[FiniteCodeSet] {
        &self.ideals
    }

    pub fn point_masses(&self) -> BTreeMap<FiniteCodeSet, ExtendedRational> {
        self.ideals
            .iter()
            .cloned()
            .zip(self.masses.iter().cloned())
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }

    /// Which ideals lie in the open, indexed like [`Self::ideals`].
    pub fn points_of(&self, open: &OpenExpr) -> Result<Vec<bool>> {
        points_of(&self.ideals, open)
    }
}

fn points_of(ideals: &[FiniteCodeSet], open: &OpenExpr) -> Result<Vec<bool>> {
    let n = ideals.len();
    let basic = |c: Code| ideals.iter().map(|i| i.contains(c)).collect::<Vec<bool>>();
    let or = |mut acc: Vec<bool>, other: Vec<bool>| {
        acc.iter_mut().zip(other).for_each(|(a, b)| *a |= b);
        acc
    };
    Ok(match open {
        OpenExpr::Empty => vec![false; n],
        OpenExpr::Basic(c) => basic(*c),
        OpenExpr::Union(parts) => {
            let mut acc = vec![false; n];
            for p in parts {
                acc = or(acc, points_of(ideals, p)?);
            }
            acc
        }
        OpenExpr::Intersect(parts) => {
            let mut acc = vec![true; n];
            for p in parts {
                let other = points_of(ideals, p)?;
                acc.iter_mut().zip(other).for_each(|(a, b)| *a &= b);
            }
            acc
        }
        OpenExpr::Enumerated(CodeEnumeration::Finite(codes)) => {
            codes.iter().fold(vec![false; n], |acc, &c| or(acc, basic(c)))
        }
        OpenExpr::Enumerated(CodeEnumeration::Generated(_)) => return Err(Error::NotExact),
    })
}

impl Valuation for FiniteValuation {
    fn exact(&self, open: &OpenExpr) -> Result<ExtendedRational> {
        let inside = self.points_of(open)?;
        Ok(self
            .masses
            .iter()
            .zip(inside)
            .filter(|(_, hit)| *hit)
            .map(|(m, _)| m.clone())
            .sum())
    }
}

/// Every open set of a finite relation, each named by its largest generating
/// set `{a | [a] ⊆ U}`, in order of first appearance over subsets of codes.
pub fn finite_opens(rel: &FiniteRelation) -> Result<Vec<FiniteCodeSet>> {
    let ideals = enumerate_ideals_finite(rel)?;
    let codes = rel.code_set().to_vec();
    let mut seen: BTreeMap<Vec<bool>, FiniteCodeSet> = BTreeMap::new();
    let mut order = Vec::new();
    for mask in subset_masks(codes.len()) {
        let a: Vec<Code> = crate::relation::select(&codes, mask).collect();
        let points = points_of(&ideals, &OpenExpr::basics(a))?;
        if !seen.contains_key(&points) {
            let saturated: FiniteCodeSet = codes
                .iter()
                .copied()
                .filter(|&c| ideals.iter().zip(&points).all(|(i, &hit)| hit || !i.contains(c)))
                .collect();
            seen.insert(points.clone(), saturated.clone());
            order.push(saturated);
        }
    }
    Ok(order)
}
