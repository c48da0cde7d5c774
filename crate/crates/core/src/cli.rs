//! The `idealval` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conversion::{
    enumerate_b, fv_chain, fv_directed_merge, fv_member, gv_eval, roundtrip_fg_check, roundtrip_gf_check,
    Agreement, MergeBranch,
};
use crate::error::{Error, Result};
use crate::gallery::{cantor_dirac_staircase, dirac_staircase, lebesgue_staircase, nu_s};
use crate::ideal::enumerate_ideals_finite;
use crate::oracle::cantor::BitString;
use crate::oracle::finite::{finite_dirac, finite_opens, make_finite_valuation};
use crate::oracle::line::encode_interval;
use crate::oracle::{check_modularity, check_strictness, sum_of_differences_check, upper_sets, CodeEnumeration, OpenExpr, Oracle};
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::relation::{Code, FiniteCodeSet, Relation, Verdict};
use crate::report::{Outcome, Report};
use crate::simple::{prec_v, SimpleValuation, ValuationChain, DEFAULT_GUARD};
use crate::space::{Space, SpaceName};
use crate::text;
use crate::upper::prec_u;

#[derive(Parser, Debug)]
#[command(name = "idealval", version, about = "Valuations on spaces of ideals, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// sierpinski, finite:<file>, line or cantor:<p/q>
    #[arg(long, default_value = "sierpinski")]
    pub space: SpaceName,
    /// Transitively close the relation file instead of rejecting it.
    #[arg(long)]
    pub close: bool,
    /// Largest domain the exponential subset loops accept.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide r ≺_V s.
    PrecV {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
    },
    /// Decide F ≺_U G.
    PrecU {
        #[command(flatten)]
        common: Common,
        #[arg(long = "F")]
        f: String,
        #[arg(long = "G")]
        g: String,
    },
    /// Semidecide r ∈ f_V(ν).
    FvMember {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        valuation: Option<String>,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 64)]
        fuel: usize,
    },
    /// Print the first elements of the chain presenting f_V(ν).
    FvChain {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        valuation: Option<String>,
        #[arg(long, default_value_t = 8)]
        fuel: usize,
    },
    /// Lower bound for g_V(I)(U) at the given fuel.
    GvEval {
        #[command(flatten)]
        common: Common,
        /// A valuation-chain file, `fv`, `lebesgue-staircase` or `dirac:<code>`.
        /// On Cantor space `dirac:[s]` is the point mass at `s000…`.
        #[arg(long)]
        chain: String,
        #[arg(long)]
        valuation: Option<String>,
        /// Codes whose basic opens make up U.
        #[arg(long)]
        open: String,
        #[arg(long, default_value_t = 64)]
        fuel: usize,
    },
    /// Merge two members of f_V(ν) and print the construction trace.
    Merge {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        valuation: Option<String>,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
    },
    /// Check strictness, modularity and the sum-of-differences identity.
    Axioms {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        valuation: Option<String>,
        /// Open pairs sampled on infinite spaces.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Round trips: g_V∘f_V on every open, or f_V∘g_V on a chain given by --chain.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        valuation: Option<String>,
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, default_value = "1/64")]
        epsilon: String,
        #[arg(long, default_value_t = 512)]
        fuel: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// List the ideals of a finite relation.
    Ideals {
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// A path to read, or else the argument itself with `;` standing for newlines.
fn read_input(arg: &str) -> Result<String> {
    if Path::new(arg).is_file() {
        Ok(std::fs::read_to_string(arg)?)
    } else {
        Ok(arg.replace(';', "\n"))
    }
}

fn load_space(common: &Common) -> Result<Space> {
    Ok(match &common.space {
        SpaceName::Sierpinski => Space::sierpinski(),
        SpaceName::Line => Space::Line,
        SpaceName::Cantor(bias) => Space::cantor(bias.clone())?,
        SpaceName::Finite(path) => {
            let text = std::fs::read_to_string(path)?;
            Space::Finite(Arc::new(text::parse_relation(&text, &text::parse_plain_code, common.close)?))
        }
    })
}

fn parser(space: &Space) -> impl Fn(&str) -> Option<Code> + '_ {
    move |t| space.parse_code(t)
}

fn load_valuation(space: &Space, arg: &str) -> Result<SimpleValuation> {
    text::parse_simple_valuation(&read_input(arg)?, &parser(space))
}

fn load_codes(space: &Space, arg: &str) -> Result<Vec<Code>> {
    text::parse_code_list(&read_input(arg)?, &parser(space))
}

/// The valuation named by `--valuation`, or the bundled one.
fn load_oracle(space: &Space, valuation: Option<&str>) -> Result<Oracle> {
    match (space, valuation) {
        (Space::Finite(rel), Some(arg)) => {
            let masses = text::parse_point_masses(&read_input(arg)?, &parser(space))?;
            Ok(Arc::new(make_finite_valuation(rel.clone(), masses)?))
        }
        (Space::Finite(rel), None) if **rel == crate::relation::sierpinski() => Ok(Arc::new(nu_s())),
        (Space::Finite(_), None) => Err(Error::Precondition("--valuation is required on finite spaces".into())),
        (_, Some(_)) => Err(Error::Precondition("--valuation applies to finite spaces only".into())),
        (_, None) => Ok(space.measure().expect("infinite spaces carry a measure")),
    }
}

fn inline(space: &Space, r: &SimpleValuation) -> String {
    let body: Vec<String> = r
        .iter()
        .map(|(c, w)| format!("{}: {}", space.code_name(c), format_rational(w)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

fn code_set_name(space: &Space, set: &FiniteCodeSet) -> String {
    let names: Vec<String> = set.iter().map(|c| space.code_name(c)).collect();
    format!("{{{}}}", names.join(" "))
}

/// A chain selected by `--chain`, with the valuation it presents when known.
fn load_chain(space: &Space, arg: &str, valuation: Option<&str>, guard: usize) -> Result<(ValuationChain, Option<Oracle>)> {
    if arg == "fv" {
        let rel = space.require_finite()?;
        let oracle = load_oracle(space, valuation)?;
        return Ok((fv_chain(rel.clone(), oracle.clone(), guard)?, Some(oracle)));
    }
    if arg == "lebesgue-staircase" {
        if !matches!(space, Space::Line) {
            return Err(Error::Precondition("lebesgue-staircase lives on --space line".into()));
        }
        return Ok((lebesgue_staircase(), space.measure()));
    }
    if let Some(code) = arg.strip_prefix("dirac:") {
        let code = space
            .parse_code(code)
            .ok_or_else(|| Error::Precondition(format!("bad code {code:?}")))?;
        let certificate: Option<Oracle> = match space.finite() {
            Some(rel) => {
                let ideal: FiniteCodeSet = rel
                    .code_set()
                    .iter()
                    .filter(|&b| b == code || rel.precedes(b, code))
                    .collect();
                Some(Arc::new(finite_dirac(rel.clone(), ideal)?))
            }
            None => None,
        };
        if let Space::Cantor(_) = space {
            let prefix = BitString::from_code(code).ok_or_else(|| Error::Precondition(format!("{code} is not a bit string")))?;
            return Ok((cantor_dirac_staircase(prefix), None));
        }
        if !space.relation().precedes(code, code) {
            return Err(Error::Precondition(format!(
                "dirac:{} needs a code with c ≺ c on this space",
                space.code_name(code)
            )));
        }
        return Ok((dirac_staircase(code), certificate));
    }
    let chain = text::parse_valuation_chain(&read_input(arg)?, &parser(space))?;
    let certificate = match valuation {
        Some(v) => Some(load_oracle(space, Some(v))?),
        None => None,
    };
    Ok((chain, certificate))
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{text}")?;
    Ok(())
}

fn finish(out: &mut dyn Write, report: &Report) -> CliResult {
    write!(out, "{report}").map_err(Error::from)?;
    if report.has_failures() {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::PrecV { common, r, s } => {
            let space = load_space(&common)?;
            let r = load_valuation(&space, &r)?;
            let s = load_valuation(&space, &s)?;
            emit(out, prec_v(space.relation().as_ref(), &r, &s, common.guard)?)?;
        }
        Command::PrecU { common, f, g } => {
            let space = load_space(&common)?;
            let f: FiniteCodeSet = load_codes(&space, &f)?.into_iter().collect();
            let g: FiniteCodeSet = load_codes(&space, &g)?.into_iter().collect();
            emit(out, prec_u(space.relation().as_ref(), &f, &g))?;
        }
        Command::FvMember { common, valuation, r, fuel } => {
            let space = load_space(&common)?;
            let oracle = load_oracle(&space, valuation.as_deref())?;
            let r = load_valuation(&space, &r)?;
            let verdict = fv_member(oracle.as_ref(), &r, fuel, common.guard)?;
            emit(
                out,
                match verdict {
                    Verdict::Confirmed => "member",
                    Verdict::Refuted => "not-member",
                    Verdict::Unknown => "unknown",
                },
            )?;
        }
        Command::FvChain { common, valuation, fuel } => {
            let space = load_space(&common)?;
            let rel = space.require_finite()?;
            let oracle = load_oracle(&space, valuation.as_deref())?;
            let chain = fv_chain(rel.clone(), oracle, common.guard)?;
            for (k, s) in chain.prefix(fuel).iter().enumerate() {
                emit(out, format!("s{k} {}", inline(&space, s)))?;
            }
        }
        Command::GvEval { common, chain, valuation, open, fuel } => {
            let space = load_space(&common)?;
            let (chain, _) = load_chain(&space, &chain, valuation.as_deref(), common.guard)?;
            let a = load_codes(&space, &open)?;
            let value = gv_eval(space.relation(), chain, CodeEnumeration::Finite(a)).at(fuel);
            emit(out, format_rational(&value))?;
        }
        Command::Merge { common, valuation, r, s } => {
            let space = load_space(&common)?;
            let rel = space.require_finite()?;
            let oracle = load_oracle(&space, valuation.as_deref())?;
            let r0 = load_valuation(&space, &r)?;
            let r1 = load_valuation(&space, &s)?;
            let merge = fv_directed_merge(rel, oracle.as_ref(), &r0, &r1, common.guard)?;
            let p = &merge.params;
            emit(out, format!("s {}", inline(&space, &merge.upper)))?;
            emit(out, format!("alpha {}", format_rational(&p.alpha)))?;
            emit(out, format!("M {}", format_rational(&p.m)))?;
            emit(out, format!("D {}", code_set_name(&space, &p.d)))?;
            for part in &p.parts {
                let branch = match &part.branch {
                    MergeBranch::Equal => "equal".to_string(),
                    MergeBranch::Infinite(c) => format!("infinite c={}", space.code_name(*c)),
                    MergeBranch::Finite { n0 } => format!("finite n0={n0}"),
                };
                emit(
                    out,
                    format!("G {} {branch} h={}", code_set_name(&space, &part.g), inline(&space, &part.weights)),
                )?;
            }
            let relation = space.relation();
            let mut report = Report::default();
            for (name, below) in [("r0", &r0), ("r1", &r1)] {
                let ok = prec_v(relation.as_ref(), below, &merge.upper, common.guard)?;
                report.push(format!("prec_v({name},s)"), pass_if(ok), "");
            }
            let member = fv_member(oracle.as_ref(), &merge.upper, 0, common.guard)?;
            report.push("fv_member(s)", pass_if(member.is_confirmed()), "");
            return finish(out, &report);
        }
        Command::Axioms { common, valuation, samples, seed } => {
            let space = load_space(&common)?;
            let oracle = load_oracle(&space, valuation.as_deref())?;
            let report = axioms(&space, oracle.as_ref(), samples, seed)?;
            return finish(out, &report);
        }
        Command::Roundtrip { common, valuation, chain, epsilon, fuel, samples } => {
            let space = load_space(&common)?;
            let eps = parse_rational(&epsilon)
                .filter(|e| e >= &Rational::from_integer(0.into()))
                .ok_or_else(|| Error::Precondition(format!("bad epsilon {epsilon:?}")))?;
            let report = match chain {
                None => {
                    let rel = space.require_finite()?;
                    let oracle = load_oracle(&space, valuation.as_deref())?;
                    roundtrip_gf_check(rel.clone(), oracle, &eps, fuel, common.guard)?.0
                }
                Some(chain) => {
                    let (chain, certificate) = load_chain(&space, &chain, valuation.as_deref(), common.guard)?;
                    let codes: FiniteCodeSet = chain.prefix(4).iter().flat_map(|s| s.dom().to_vec()).collect();
                    let codes: Vec<Code> = codes.iter().take(4).collect();
                    let picked: Vec<SimpleValuation> = enumerate_b(codes).take(samples).collect();
                    let fg = roundtrip_fg_check(
                        space.relation(),
                        &chain,
                        certificate.as_deref(),
                        &picked,
                        fuel,
                        common.guard,
                    )?;
                    let mut report = fg.to_report("fg");
                    let summary = format!(
                        "agree-in={} agree-out={} unknown={} disagree={}",
                        fg.count(Agreement::In),
                        fg.count(Agreement::Out),
                        fg.count(Agreement::Unknown),
                        fg.count(Agreement::Disagree)
                    );
                    let outcome = if fg.count(Agreement::Disagree) > 0 { Outcome::Fail } else { Outcome::Pass };
                    report.push("fg-summary", outcome, summary);
                    report
                }
            };
            return finish(out, &report);
        }
        Command::Ideals { common } => {
            let space = load_space(&common)?;
            let rel = space.require_finite()?;
            for ideal in enumerate_ideals_finite(rel)? {
                emit(out, code_set_name(&space, &ideal))?;
            }
        }
    }
    Ok(())
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn random_open(space: &Space, rng: &mut ChaCha8Rng) -> Result<OpenExpr> {
    let parts = rng.gen_range(1..=3);
    let mut codes = Vec::new();
    for _ in 0..parts {
        let code = match space {
            Space::Line => {
                let a = rng.gen_range(-4..=10);
                let b = rng.gen_range(a + 1..=12);
                encode_interval(&rat(a, 8), &rat(b, 8))?
            }
            Space::Cantor(_) => {
                let len = rng.gen_range(0..=4);
                BitString::new(len, rng.gen_range(0..1u128 << len))?.code()
            }
            Space::Finite(_) => unreachable!("finite spaces enumerate their opens"),
        };
        codes.push(code);
    }
    Ok(OpenExpr::basics(codes))
}

fn axioms(space: &Space, oracle: &dyn crate::oracle::Valuation, samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::default();
    report.push("strictness", pass_if(check_strictness(oracle)?), "");
    let opens: Vec<OpenExpr> = match space {
        Space::Finite(rel) => finite_opens(rel)?.iter().map(|a| OpenExpr::basics(a.iter())).collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..2 * samples).map(|_| random_open(space, &mut rng)).collect::<Result<_>>()?
        }
    };
    let pairs: Vec<(&OpenExpr, &OpenExpr)> = match space {
        Space::Finite(_) => opens.iter().flat_map(|u| opens.iter().map(move |v| (u, v))).collect(),
        _ => opens.chunks(2).map(|p| (&p[0], &p[1])).collect(),
    };
    let mut failures = 0;
    for (u, v) in &pairs {
        if !check_modularity(oracle, u, v)? {
            failures += 1;
            report.push("modularity", Outcome::Fail, format!("U={u} V={v}"));
        }
    }
    if failures == 0 {
        report.push("modularity", Outcome::Pass, format!("pairs={}", pairs.len()));
    }
    if let Space::Finite(rel) = space {
        let mut checked = 0usize;
        let mut skipped = 0usize;
        let mut failed = 0usize;
        for d in rel.code_set().subsets() {
            if d.is_empty() || d.len() > crate::oracle::MAX_UPPER_SET_BASE {
                continue;
            }
            for p in upper_sets(&d)? {
                match sum_of_differences_check(oracle, &d, &p) {
                    Ok(true) => checked += 1,
                    Ok(false) => {
                        failed += 1;
                        report.push("sum-of-differences", Outcome::Fail, format!("D={d} P={p:?}"));
                    }
                    Err(Error::Precondition(_)) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        if failed == 0 {
            report.push(
                "sum-of-differences",
                Outcome::Pass,
                format!("cases={checked} skipped-infinite={skipped}"),
            );
        }
    }
    Ok(report)
}
