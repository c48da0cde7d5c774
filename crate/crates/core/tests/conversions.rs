mod common;

use std::sync::Arc;

use common::sv;
use idealval::conversion::{fv_chain, fv_directed_merge, fv_member, gv_eval, roundtrip_fg_check, roundtrip_gf_check, Agreement, MergeBranch};
use idealval::gallery::{finite_gallery, nu_s, sierpinski_staircase, vee};
use idealval::oracle::finite::make_finite_valuation;
use idealval::oracle::{check_modularity, check_strictness, CodeEnumeration, OpenExpr, Valuation};
use idealval::rational::{int, rat, ExtendedRational};
use idealval::relation::{sierpinski, FiniteCodeSet, Relation, Verdict};
use idealval::simple::{prec_v, DEFAULT_GUARD};
use idealval::Result;

#[test]
fn gallery_round_trips_within_tolerance() {
    for ex in finite_gallery() {
        let rel = ex.relation().clone();
        let (report, _) = roundtrip_gf_check(rel, Arc::new(ex.valuation.clone()), &rat(1, 64), 1024, DEFAULT_GUARD).unwrap();
        assert!(report.all_pass(), "{}:\n{report}", ex.name);
    }
}

#[test]
fn fv_chain_presents_the_sierpinski_mixture() {
    let s2 = Arc::new(sierpinski());
    let nu = Arc::new(nu_s());
    let chain = fv_chain(s2.clone(), nu.clone(), DEFAULT_GUARD).unwrap();
    for a in chain.prefix(40) {
        assert_eq!(fv_member(nu.as_ref(), &a, 0, DEFAULT_GUARD).unwrap(), Verdict::Confirmed);
    }
    let top = gv_eval(s2.clone(), chain.clone(), CodeEnumeration::Finite(vec![1]));
    assert!(top.exceeds(&rat(63, 128), 400).is_confirmed());
    assert!(top.at(400) < rat(1, 2));
    let whole = gv_eval(s2, chain, CodeEnumeration::Finite(vec![0]));
    assert!(whole.at(400) < int(1));
}

#[test]
fn merge_on_infinite_mass_uses_the_large_weight() {
    let rel = Arc::new(vee());
    let nu = make_finite_valuation(
        rel.clone(),
        [
            (FiniteCodeSet::from([0, 1]), ExtendedRational::Finite(rat(2, 3))),
            (FiniteCodeSet::from([0, 2]), ExtendedRational::Infinite),
        ],
    )
    .unwrap();
    let r0 = sv(&[(2, (5, 1))]);
    let r1 = sv(&[(1, (1, 3))]);
    let merge = fv_directed_merge(&rel, &nu, &r0, &r1, DEFAULT_GUARD).unwrap();
    assert!(merge.params.parts.iter().any(|p| matches!(p.branch, MergeBranch::Infinite(2))));
    assert!(prec_v(rel.as_ref(), &r0, &merge.upper, DEFAULT_GUARD).unwrap());
    assert!(prec_v(rel.as_ref(), &r1, &merge.upper, DEFAULT_GUARD).unwrap());
    assert!(fv_member(&nu, &merge.upper, 0, DEFAULT_GUARD).unwrap().is_confirmed());
}

#[test]
fn merge_rejects_non_members() {
    let rel = sierpinski();
    let err = fv_directed_merge(&rel, &nu_s(), &sv(&[(1, (1, 2))]), &sv(&[(0, (1, 4))]), DEFAULT_GUARD);
    assert!(err.is_err());
}

#[test]
fn staircase_round_trip_agrees() {
    let s2: Arc<dyn Relation> = Arc::new(sierpinski());
    let delta = make_finite_valuation(Arc::new(sierpinski()), [(FiniteCodeSet::from([0]), ExtendedRational::one())]).unwrap();
    let samples = [sv(&[(0, (1, 2))]), sv(&[(1, (1, 8))]), sv(&[(0, (1, 1))]), sv(&[(0, (3, 4))])];
    let report = roundtrip_fg_check(s2, &sierpinski_staircase(), Some(&delta), &samples, 64, DEFAULT_GUARD).unwrap();
    let got: Vec<_> = report.rows.iter().map(|r| r.agreement).collect();
    assert_eq!(got, [Agreement::In, Agreement::Out, Agreement::Out, Agreement::In]);
}

/// Reports mass 1/2 on the empty open.
#[derive(Debug)]
struct Leaky;

impl Valuation for Leaky {
    fn exact(&self, open: &OpenExpr) -> Result<ExtendedRational> {
        Ok(ExtendedRational::Finite(match open {
            OpenExpr::Empty => rat(1, 2),
            _ => int(1),
        }))
    }
}

#[test]
fn broken_oracles_are_caught() {
    assert!(!check_strictness(&Leaky).unwrap());
    assert!(check_strictness(&nu_s()).unwrap());
    assert!(check_modularity(&nu_s(), &OpenExpr::Basic(0), &OpenExpr::Basic(1)).unwrap());
}

#[test]
fn lebesgue_staircase_is_a_valid_chain() {
    use idealval::conversion::validate_chain;
    use idealval::gallery::lebesgue_staircase;
    use idealval::oracle::line::{Lebesgue, LineRelation};
    let report = validate_chain(&LineRelation, &lebesgue_staircase(), &Lebesgue::unit(), 14, DEFAULT_GUARD).unwrap();
    assert!(report.all_pass(), "{report}");
    let unbounded = validate_chain(&LineRelation, &lebesgue_staircase(), &Lebesgue::unclipped(), 6, DEFAULT_GUARD).unwrap();
    assert!(unbounded.all_pass(), "{unbounded}");
}
