//! Point valuations `δ_x(U) = 1` iff `x ∈ U`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::{ideal_member, IdealChain};
use crate::oracle::{CodeEnumeration, OpenExpr, Valuation};
use crate::rational::{ExtendedRational, Rational};
use crate::relation::{Code, Relation, Verdict};

#[derive(Clone, Debug)]
pub struct Dirac {
    rel: Arc<dyn Relation>,
    point: IdealChain,
}

pub fn dirac(rel: Arc<dyn Relation>, point: IdealChain) -> Dirac {
    Dirac { rel, point }
}

impl Dirac {
    /// Membership of the point in the open, using `fuel` chain elements and
    /// `fuel` enumerated codes per generated union.
    fn contains(&self, open: &OpenExpr, fuel: usize) -> Verdict {
        let member = |c: Code| ideal_member(self.rel.as_ref(), &self.point, c, fuel);
        let any = |vs: &mut dyn Iterator<Item = Verdict>| {
            let mut out = Verdict::Refuted;
            for v in vs {
                match v {
                    Verdict::Confirmed => return Verdict::Confirmed,
                    Verdict::Unknown => out = Verdict::Unknown,
                    Verdict::Refuted => {}
                }
            }
            out
        };
        match open {
            OpenExpr::Empty => Verdict::Refuted,
            OpenExpr::Basic(c) => member(*c),
            OpenExpr::Union(parts) => any(&mut parts.iter().map(|p| self.contains(p, fuel))),
            OpenExpr::Intersect(parts) => {
                let mut out = Verdict::Confirmed;
                for p in parts {
                    match self.contains(p, fuel) {
                        Verdict::Refuted => return Verdict::Refuted,
                        Verdict::Unknown => out = Verdict::Unknown,
                        Verdict::Confirmed => {}
                    }
                }
                out
            }
            OpenExpr::Enumerated(CodeEnumeration::Finite(codes)) => {
                any(&mut codes.iter().map(|&c| member(c)))
            }
            OpenExpr::Enumerated(e @ CodeEnumeration::Generated(_)) => {
                // A generated union is never refuted by a finite scan.
                match any(&mut e.prefix(fuel).into_iter().map(member)) {
                    Verdict::Confirmed => Verdict::Confirmed,
                    _ => Verdict::Unknown,
                }
            }
        }
    }
}

impl Valuation for Dirac {
    /// Exact for stationary chains, where membership is decided by a finite scan.
    fn exact(&self, open: &OpenExpr) -> Result<ExtendedRational> {
        let Some(prefix) = self.point.stationary_prefix() else {
            return Err(Error::NotExact);
        };
        match self.contains(open, prefix.len()) {
            Verdict::Confirmed => Ok(ExtendedRational::one()),
            Verdict::Refuted => Ok(ExtendedRational::zero()),
            Verdict::Unknown => Err(Error::NotExact),
        }
    }

    fn approx(&self, open: &OpenExpr, fuel: usize) -> Rational {
        if self.contains(open, fuel).is_confirmed() {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}
