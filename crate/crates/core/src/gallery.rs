//! Bundled example spaces, valuations and `≺_V`-chains.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::Chain;
use crate::oracle::cantor::BitString;
use crate::oracle::finite::{make_finite_valuation, FiniteValuation};
use crate::oracle::line::encode_interval;
use crate::rational::{int, rat, ExtendedRational, Rational};
use crate::relation::{sierpinski, transitive_closure, Code, FiniteCodeSet, FiniteRelation};
use crate::simple::{SimpleValuation, ValuationChain};

/// A finite relation with a named valuation on it.
#[derive(Clone, Debug)]
pub struct FiniteExample {
    pub name: &'static str,
    pub valuation: FiniteValuation,
}

impl FiniteExample {
    pub fn relation(&self) -> &Arc<FiniteRelation> {
        self.valuation.relation()
    }

    pub fn has_infinite_mass(&self) -> bool {
        self.valuation.point_masses().values().any(ExtendedRational::is_infinite)
    }
}

fn set<const N: usize>(codes: [Code; N]) -> FiniteCodeSet {
    FiniteCodeSet::from(codes)
}

fn reflexive(codes: &[Code], edges: &[(Code, Code)]) -> FiniteRelation {
    transitive_closure(codes.iter().map(|&c| (c, c)).chain(edges.iter().copied()))
}

fn build(rel: FiniteRelation, masses: Vec<(FiniteCodeSet, ExtendedRational)>) -> FiniteValuation {
    make_finite_valuation(Arc::new(rel), masses).expect("bundled masses sit on ideals")
}

/// `½δ_⊤ + ½δ_⊥` on the Sierpinski space.
pub fn nu_s() -> FiniteValuation {
    build(
        sierpinski(),
        vec![(set([0]), rat(1, 2).into()), (set([0, 1]), rat(1, 2).into())],
    )
}

/// `0 ≤ 1 ≤ 2`.
pub fn three_chain() -> FiniteRelation {
    reflexive(&[0, 1, 2], &[(0, 1), (1, 2)])
}

/// `0 ≤ 1` and `0 ≤ 2`.
pub fn vee() -> FiniteRelation {
    reflexive(&[0, 1, 2], &[(0, 1), (0, 2)])
}

/// `0 ≤ 1, 2 ≤ 3`.
pub fn diamond() -> FiniteRelation {
    reflexive(&[0, 1, 2, 3], &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// `0` and `1` are equivalent, and both lie below `2`.
pub fn twin_preorder() -> FiniteRelation {
    reflexive(&[0, 1, 2], &[(0, 1), (1, 0), (1, 2)])
}

/// Every bundled finite space with its valuations.
pub fn finite_gallery() -> Vec<FiniteExample> {
    let inf = || ExtendedRational::Infinite;
    let q = |n, d| ExtendedRational::Finite(rat(n, d));
    vec![
        FiniteExample {
            name: "sierpinski-mixture",
            valuation: nu_s(),
        },
        FiniteExample {
            name: "sierpinski-zero",
            valuation: build(sierpinski(), vec![]),
        },
        FiniteExample {
            name: "sierpinski-dirac-bottom",
            valuation: build(sierpinski(), vec![(set([0]), ExtendedRational::one())]),
        },
        FiniteExample {
            name: "sierpinski-infinite-top",
            valuation: build(sierpinski(), vec![(set([0, 1]), inf())]),
        },
        FiniteExample {
            name: "three-chain",
            valuation: build(
                three_chain(),
                vec![(set([0]), q(1, 3)), (set([0, 1]), q(1, 6)), (set([0, 1, 2]), q(1, 2))],
            ),
        },
        FiniteExample {
            name: "vee",
            valuation: build(
                vee(),
                vec![(set([0]), q(1, 4)), (set([0, 1]), q(1, 2)), (set([0, 2]), q(1, 4))],
            ),
        },
        FiniteExample {
            name: "vee-infinite",
            valuation: build(vee(), vec![(set([0, 1]), q(2, 3)), (set([0, 2]), inf())]),
        },
        FiniteExample {
            name: "diamond",
            valuation: build(
                diamond(),
                vec![
                    (set([0]), q(1, 8)),
                    (set([0, 1]), q(1, 4)),
                    (set([0, 2]), q(1, 8)),
                    (set([0, 1, 2, 3]), q(1, 2)),
                ],
            ),
        },
        FiniteExample {
            name: "twin-preorder",
            valuation: build(twin_preorder(), vec![(set([0, 1]), q(2, 3)), (set([0, 1, 2]), q(1, 3))]),
        },
    ]
}

fn two_pow(n: u32) -> Rational {
    Rational::from_integer(BigInt::one() << n)
}

/// `{code ↦ 1 − 2^{-(k+1)}}` at position `k`.
///
/// For an idempotent `code` this presents `f_V(δ_x)` where `x = ↓code`.
pub fn dirac_staircase(code: Code) -> ValuationChain {
    Chain::generated(move |k| {
        let w = Rational::one() - Rational::one() / two_pow(k as u32 + 1);
        SimpleValuation::single(code, w).expect("positive weight")
    })
}

/// `{s·0^k ↦ 1 − 2^{-(k+1)}}` at position `k`, presenting `f_V` of the
/// point mass at `s000…` in Cantor space. Ends once the strings hit the
/// code-size limit.
pub fn cantor_dirac_staircase(prefix: BitString) -> ValuationChain {
    let elems = (0..).scan(Some(prefix), |s, k: usize| {
        let current = s.take()?;
        *s = current.push(false).ok();
        let w = Rational::one() - Rational::one() / two_pow(k as u32 + 1);
        Some(SimpleValuation::single(current.code(), w).expect("positive weight"))
    });
    Chain::lazy(elems)
}

/// The Dirac staircase at the bottom of the Sierpinski space.
pub fn sierpinski_staircase() -> ValuationChain {
    dirac_staircase(0)
}

/// Level of element `k` of the Lebesgue staircase: `⌊log₂(k + 2)⌋`.
pub fn lebesgue_level(k: usize) -> u32 {
    (k as u64 + 2).ilog2()
}

/// Element `k` of the dyadic Lebesgue staircase.
///
/// At level `L` it places weight `2^{-L}(1 − 1/(k+2))` on each interval
/// `(j/2^L − e, (j+1)/2^L + e)` for `0 ≤ j < 2^L`, with the margin
/// `e = 1/(2^{L+3}(k+2))`. Consecutive elements ascend under `≺_V`, and the
/// chain presents `f_V` of Lebesgue measure on `(0, 1)`.
pub fn lebesgue_staircase_element(k: usize) -> SimpleValuation {
    let level = lebesgue_level(k);
    let cells = two_pow(level);
    let k2 = int(k as i64 + 2);
    let margin = Rational::one() / (two_pow(level + 3) * &k2);
    let weight = (Rational::one() - Rational::one() / &k2) / &cells;
    let entries = (0..1u64 << level).map(|j| {
        let lo = int(j as i64) / &cells - &margin;
        let hi = int(j as i64 + 1) / &cells + &margin;
        let code = encode_interval(&lo, &hi).expect("small dyadic intervals encode");
        (code, weight.clone())
    });
    SimpleValuation::new(entries).expect("positive weights")
}

pub fn lebesgue_staircase() -> ValuationChain {
    Chain::generated(lebesgue_staircase_element)
}
