//! Line-based text formats.
//!
//! Blank lines and `#` comments are ignored everywhere. Code tokens go through
//! a caller-supplied parser so that spaces can accept native names.
//!
//! * relation: optional `codes: n0 n1 …` header, then one `a b` pair per line
//!   meaning `a ≺ b`;
//! * code chain: whitespace-separated codes, a trailing `*` on the last one
//!   marks an eventually constant chain;
//! * simple valuation: one `code p/q` per line;
//! * valuation chain: simple valuations separated by `--` lines, with a final
//!   `*` line for an eventually constant chain;
//! * point masses: `ideal-codes : mass` per line, where mass is `p/q` or `inf`;
//! * code list: whitespace- or comma-separated codes.

use std::collections::BTreeMap;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::ideal::IdealChain;
use crate::rational::{format_rational, parse_rational, ExtendedRational};
use crate::relation::{transitive_closure_with_codes, Code, FiniteCodeSet, FiniteRelation};
use crate::simple::{SimpleValuation, ValuationChain};

pub type CodeParser<'a> = &'a dyn Fn(&str) -> Option<Code>;

pub fn parse_plain_code(token: &str) -> Option<Code> {
    token.parse().ok()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn code_at(parse: CodeParser<'_>, token: &str, line: usize) -> Result<Code> {
    parse(token).ok_or_else(|| Error::parse(line, format!("bad code {token:?}")))
}

/// Splits on whitespace and commas, keeping bracketed native names whole.
pub fn tokens(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for ch in line.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            c if depth == 0 && (c.is_whitespace() || c == ',') => {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

/// Parses a relation; with `close` the pairs are transitively closed,
/// otherwise they must already be transitive.
pub fn parse_relation(text: &str, parse: CodeParser<'_>, close: bool) -> Result<FiniteRelation> {
    let mut codes = Vec::new();
    let mut pairs = Vec::new();
    for (line, content) in content_lines(text) {
        if let Some(rest) = content.strip_prefix("codes:") {
            for t in tokens(rest) {
                codes.push(code_at(parse, &t, line)?);
            }
            continue;
        }
        let toks = tokens(content);
        let [a, b] = toks.as_slice() else {
            return Err(Error::parse(line, "expected a pair `a b`"));
        };
        pairs.push((code_at(parse, a, line)?, code_at(parse, b, line)?));
    }
    if close {
        Ok(transitive_closure_with_codes(codes, pairs))
    } else {
        FiniteRelation::from_pairs(codes, pairs)
    }
}

pub fn format_relation(rel: &FiniteRelation) -> String {
    let mut out = String::from("codes:");
    for c in rel.code_set().iter() {
        out.push_str(&format!(" {c}"));
    }
    out.push('\n');
    for (a, b) in rel.pairs() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

pub fn parse_code_chain(text: &str, parse: CodeParser<'_>) -> Result<IdealChain> {
    let mut codes = Vec::new();
    let mut stationary = false;
    for (line, content) in content_lines(text) {
        for t in tokens(content) {
            if stationary {
                return Err(Error::parse(line, "`*` must mark the last code"));
            }
            let t = match t.strip_suffix('*') {
                Some(rest) => {
                    stationary = true;
                    rest.to_string()
                }
                None => t,
            };
            if !t.is_empty() {
                codes.push(code_at(parse, &t, line)?);
            }
        }
    }
    if codes.is_empty() {
        return Err(Error::parse(0, "empty chain"));
    }
    Ok(if stationary {
        Chain::Stationary(codes)
    } else {
        Chain::Prefix(codes)
    })
}

pub fn parse_code_list(text: &str, parse: CodeParser<'_>) -> Result<Vec<Code>> {
    let mut out = Vec::new();
    for (line, content) in content_lines(text) {
        for t in tokens(content) {
            out.push(code_at(parse, &t, line)?);
        }
    }
    Ok(out)
}

pub fn parse_code_set(text: &str, parse: CodeParser<'_>) -> Result<FiniteCodeSet> {
    Ok(parse_code_list(text, parse)?.into_iter().collect())
}

fn valuation_entry(content: &str, line: usize, parse: CodeParser<'_>) -> Result<(Code, crate::Rational)> {
    let toks = tokens(content);
    let [code, weight] = toks.as_slice() else {
        return Err(Error::parse(line, "expected `code p/q`"));
    };
    let code = code_at(parse, code, line)?;
    let w = parse_rational(weight).ok_or_else(|| Error::parse(line, format!("bad rational {weight:?}")))?;
    Ok((code, w))
}

pub fn parse_simple_valuation(text: &str, parse: CodeParser<'_>) -> Result<SimpleValuation> {
    let entries = content_lines(text)
        .map(|(line, content)| valuation_entry(content, line, parse))
        .collect::<Result<Vec<_>>>()?;
    SimpleValuation::new(entries)
}

pub fn format_simple_valuation(r: &SimpleValuation, name: &dyn Fn(Code) -> String) -> String {
    r.iter()
        .map(|(c, w)| format!("{} {}\n", name(c), format_rational(w)))
        .collect()
}

pub fn parse_valuation_chain(text: &str, parse: CodeParser<'_>) -> Result<ValuationChain> {
    let mut blocks = vec![Vec::new()];
    let mut stationary = false;
    for (line, content) in content_lines(text) {
        if stationary {
            return Err(Error::parse(line, "`*` must be the last line"));
        }
        match content {
            "--" => blocks.push(Vec::new()),
            "*" => stationary = true,
            _ => blocks
                .last_mut()
                .expect("non-empty")
                .push(valuation_entry(content, line, parse)?),
        }
    }
    let elems = blocks
        .into_iter()
        .map(SimpleValuation::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(if stationary {
        Chain::Stationary(elems)
    } else {
        Chain::Prefix(elems)
    })
}

pub fn parse_point_masses(text: &str, parse: CodeParser<'_>) -> Result<BTreeMap<FiniteCodeSet, ExtendedRational>> {
    let mut out = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let (ideal, mass) = content
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `ideal-codes : mass`"))?;
        let ideal: FiniteCodeSet = tokens(ideal)
            .iter()
            .map(|t| code_at(parse, t, line))
            .collect::<Result<_>>()?;
        let mass = ExtendedRational::parse(mass).ok_or_else(|| Error::parse(line, format!("bad mass {:?}", mass.trim())))?;
        if out.insert(ideal, mass).is_some() {
            return Err(Error::parse(line, "ideal listed twice"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::relation::Relation;

    const P: CodeParser<'static> = &parse_plain_code;

    #[test]
    fn relation_round_trip() {
        let rel = parse_relation("codes: 0 1 2\n0 0\n0 1 # edge\n1 1\n", P, false).unwrap();
        assert!(rel.precedes(0, 1));
        assert!(rel.code_set().contains(2));
        assert_eq!(parse_relation(&format_relation(&rel), P, false).unwrap(), rel);
    }

    #[test]
    fn relation_closure_flag() {
        assert!(parse_relation("0 1\n1 2\n", P, false).is_err());
        let rel = parse_relation("0 1\n1 2\n", P, true).unwrap();
        assert!(rel.precedes(0, 2));
    }

    #[test]
    fn relation_errors_carry_lines() {
        let err = parse_relation("0 1\n0 1 2\n", P, true).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn chains() {
        let c = parse_code_chain("0 1*", P).unwrap();
        assert_eq!(c.stationary_prefix(), Some(&[0, 1][..]));
        let c = parse_code_chain("0\n1\n", P).unwrap();
        assert_eq!(c.get(2), None);
        assert!(parse_code_chain("0* 1", P).is_err());
        assert!(parse_code_chain("", P).is_err());
    }

    #[test]
    fn valuations() {
        let r = parse_simple_valuation("0 1/2\n1 1/4\n", P).unwrap();
        assert_eq!(r.total(), rat(3, 4));
        assert_eq!(format_simple_valuation(&r, &|c| c.to_string()), "0 1/2\n1 1/4\n");
        assert!(parse_simple_valuation("0 0.5\n", P).is_err());
        assert!(matches!(parse_simple_valuation("0 0/1\n", P), Err(Error::NonPositiveWeight { code: 0 })));
        let chain = parse_valuation_chain("0 1/2\n--\n0 3/4\n*\n", P).unwrap();
        assert_eq!(chain.get(5).unwrap().total(), rat(3, 4));
    }

    #[test]
    fn point_masses() {
        let m = parse_point_masses("0 : 1/2\n0 1 : inf\n", P).unwrap();
        assert_eq!(m[&FiniteCodeSet::from([0, 1])], ExtendedRational::Infinite);
        assert!(parse_point_masses("0 : 1/2\n0 : 1/3\n", P).is_err());
        assert!(parse_point_masses("0 1/2\n", P).is_err());
    }

    #[test]
    fn native_tokens_stay_whole() {
        assert_eq!(tokens("(0, 1/2) 1/4"), vec!["(0, 1/2)", "1/4"]);
        assert_eq!(tokens("[01],[1]"), vec!["[01]", "[1]"]);
    }
}
