//! Round-trip checks: `g_V ∘ f_V` on finite spaces and `f_V ∘ g_V` on chains.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::conversion::fv::{fv_chain, fv_member, is_fv_member};
use crate::conversion::gv::gv_eval;
use crate::error::Result;
use crate::oracle::finite::finite_opens;
use crate::oracle::{CodeEnumeration, OpenExpr, Valuation};
use crate::rational::{format_rational, ExtendedRational, Rational};
use crate::relation::{FiniteRelation, Relation, Verdict};
use crate::report::{Outcome, Report};
use crate::simple::{prec_v, SimpleValuation, ValuationChain};

/// How one open fared in [`roundtrip_gf_check`].
#[derive(Clone, Debug)]
pub struct OpenTrace {
    pub generators: Vec<crate::relation::Code>,
    pub target: ExtendedRational,
    pub outcome: Outcome,
    /// Fuel at which the stream came within tolerance.
    pub reached_at: Option<usize>,
    pub last: Rational,
}

/// Compares `g_V(f_V(ν))(U)` with `ν(U)` on every open of a finite space.
///
/// An open passes once the stream comes within `eps` below a finite target
/// (or exceeds `1/eps` for an infinite one) by fuel `fuel`, without ever
/// exceeding the target along the way. With `eps = 0` an infinite target
/// can never be reached.
pub fn roundtrip_gf_check(
    rel: Arc<FiniteRelation>,
    oracle: Arc<dyn Valuation>,
    eps: &Rational,
    fuel: usize,
    guard: usize,
) -> Result<(Report, Vec<OpenTrace>)> {
    let chain = fv_chain(Arc::clone(&rel), Arc::clone(&oracle), guard)?;
    let mut report = Report::default();
    let mut traces = Vec::new();
    for generators in finite_opens(&rel)? {
        let codes = generators.to_vec();
        let target = oracle.exact(&OpenExpr::basics(codes.iter().copied()))?;
        let stream = gv_eval(rel.clone(), chain.clone(), CodeEnumeration::Finite(codes.clone()));
        let mut trace = OpenTrace {
            generators: codes,
            target: target.clone(),
            outcome: Outcome::Fail,
            reached_at: None,
            last: Rational::zero(),
        };
        for (n, value) in stream.approximations().take(fuel + 1).enumerate() {
            trace.last = value.clone();
            if target.as_finite().is_some_and(|t| &value > t) {
                trace.outcome = Outcome::Fail;
                break;
            }
            let reached = match &target {
                ExtendedRational::Finite(t) => value >= t - eps,
                ExtendedRational::Infinite => {
                    !eps.is_zero() && value > Rational::one() / eps
                }
            };
            if reached {
                trace.outcome = Outcome::Pass;
                trace.reached_at = Some(n);
                break;
            }
        }
        let details = format!(
            "target={} last={} reached_at={}",
            target,
            format_rational(&trace.last),
            trace.reached_at.map_or("-".to_string(), |n| n.to_string()),
        );
        report.push(format!("gf U={generators}"), trace.outcome, details);
        traces.push(trace);
    }
    Ok((report, traces))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    In,
    Out,
    Disagree,
    Unknown,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agreement::In => "agree-in",
            Agreement::Out => "agree-out",
            Agreement::Disagree => "disagree",
            Agreement::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FgRow {
    pub sample: SimpleValuation,
    /// `r ∈ I`.
    pub chain_side: Verdict,
    /// `r ∈ f_V(g_V(I))`.
    pub stream_side: Verdict,
    pub agreement: Agreement,
}

#[derive(Clone, Debug, Default)]
pub struct FgReport {
    pub rows: Vec<FgRow>,
}

impl FgReport {
    pub fn count(&self, a: Agreement) -> usize {
        self.rows.iter().filter(|r| r.agreement == a).count()
    }

    pub fn to_report(&self, name: &str) -> Report {
        let mut report = Report::default();
        for row in &self.rows {
            let outcome = match row.agreement {
                Agreement::In | Agreement::Out => Outcome::Pass,
                Agreement::Disagree => Outcome::Fail,
                Agreement::Unknown => Outcome::Unknown,
            };
            report.push(
                format!("{name} r={}", row.sample),
                outcome,
                format!("{} chain={} stream={}", row.agreement, row.chain_side, row.stream_side),
            );
        }
        report
    }
}

/// Membership agreement between `I` and `f_V(g_V(I))` on sampled `r`.
///
/// `r ∈ I` is confirmed by some `r ≺_V a_i` with `i < fuel`. `r ∈ f_V(g_V(I))`
/// is confirmed when, for every non-empty `F ⊆ dom(r)`, the `g_V` stream on
/// `∪_{b∈F}[b]` exceeds `Σ_F r` within `fuel`. Neither side can be refuted
/// from the chain alone; when an exact `certificate` valuation `ν` with
/// `I = f_V(ν)` is supplied, `r ∉ f_V(ν)` refutes both sides.
pub fn roundtrip_fg_check(
    rel: Arc<dyn Relation>,
    chain: &ValuationChain,
    certificate: Option<&dyn Valuation>,
    samples: &[SimpleValuation],
    fuel: usize,
    guard: usize,
) -> Result<FgReport> {
    let elems = chain.prefix(fuel);
    let mut report = FgReport::default();
    for r in samples {
        let outside = match certificate {
            Some(nu) => !is_fv_member(nu, r, guard)?,
            None => false,
        };
        let mut chain_side = Verdict::Unknown;
        for a in &elems {
            if prec_v(rel.as_ref(), r, a, guard)? {
                chain_side = Verdict::Confirmed;
                break;
            }
        }
        if chain_side == Verdict::Unknown && outside {
            chain_side = Verdict::Refuted;
        }
        let mut stream_side = Verdict::Confirmed;
        for f in r.dom().nonempty_subsets() {
            let stream = gv_eval(rel.clone(), chain.clone(), CodeEnumeration::Finite(f.to_vec()));
            if !stream.exceeds(&r.mass_over(&f), fuel).is_confirmed() {
                stream_side = Verdict::Unknown;
                break;
            }
        }
        if stream_side == Verdict::Unknown && outside {
            stream_side = Verdict::Refuted;
        }
        let agreement = match (chain_side, stream_side) {
            (Verdict::Confirmed, Verdict::Confirmed) => Agreement::In,
            (Verdict::Refuted, Verdict::Refuted) => Agreement::Out,
            (Verdict::Confirmed, Verdict::Refuted) | (Verdict::Refuted, Verdict::Confirmed) => Agreement::Disagree,
            _ => Agreement::Unknown,
        };
        report.rows.push(FgRow {
            sample: r.clone(),
            chain_side,
            stream_side,
            agreement,
        });
    }
    Ok(report)
}

/// Checks that the first `n` chain elements ascend under `≺_V` and lie in
/// `f_V(ν)`. Elements whose domain exceeds `guard` are reported `UNKNOWN`.
pub fn validate_chain(
    rel: &dyn Relation,
    chain: &ValuationChain,
    certificate: &dyn Valuation,
    n: usize,
    guard: usize,
) -> Result<Report> {
    let mut report = Report::default();
    let elems = chain.prefix(n);
    for (i, w) in elems.windows(2).enumerate() {
        let ok = prec_v(rel, &w[0], &w[1], guard).unwrap_or(false);
        if !ok {
            report.push(format!("ascending a{i}≺a{}", i + 1), Outcome::Fail, "");
        }
    }
    if report.checks.is_empty() {
        report.push("ascending", Outcome::Pass, format!("elements={}", elems.len()));
    }
    for (i, a) in elems.iter().enumerate() {
        let outcome = match fv_member(certificate, a, 0, guard) {
            Ok(Verdict::Confirmed) => Outcome::Pass,
            Ok(Verdict::Refuted) => Outcome::Fail,
            Ok(Verdict::Unknown) | Err(_) => Outcome::Unknown,
        };
        if outcome != Outcome::Pass {
            report.push(format!("inside a{i}"), outcome, format!("|dom|={}", a.len()));
        }
    }
    Ok(report)
}
