//! Named spaces: `sierpinski`, `finite:<file>`, `line`, `cantor:<p/q>`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::cantor::{BitString, CantorCoin, PrefixRelation};
use crate::oracle::line::{decode_interval, encode_interval, Lebesgue, LineRelation};
use crate::oracle::Oracle;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::relation::{sierpinski, Code, FiniteRelation, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceName {
    Sierpinski,
    Finite(String),
    Line,
    Cantor(Rational),
}

impl FromStr for SpaceName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sierpinski" => Ok(SpaceName::Sierpinski),
            "line" => Ok(SpaceName::Line),
            _ => {
                if let Some(path) = s.strip_prefix("finite:") {
                    Ok(SpaceName::Finite(path.to_string()))
                } else if let Some(bias) = s.strip_prefix("cantor:") {
                    parse_rational(bias)
                        .map(SpaceName::Cantor)
                        .ok_or_else(|| format!("bad bias {bias:?}"))
                } else {
                    Err(format!("unknown space {s:?}; expected sierpinski, finite:<file>, line or cantor:<p/q>"))
                }
            }
        }
    }
}

impl fmt::Display for SpaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceName::Sierpinski => f.write_str("sierpinski"),
            SpaceName::Finite(p) => write!(f, "finite:{p}"),
            SpaceName::Line => f.write_str("line"),
            SpaceName::Cantor(b) => write!(f, "cantor:{}", format_rational(b)),
        }
    }
}

/// A loaded space.
#[derive(Clone, Debug)]
pub enum Space {
    Finite(Arc<FiniteRelation>),
    Line,
    Cantor(CantorCoin),
}

impl Space {
    pub fn sierpinski() -> Self {
        Space::Finite(Arc::new(sierpinski()))
    }

    pub fn cantor(bias: Rational) -> Result<Self> {
        Ok(Space::Cantor(CantorCoin::new(bias)?))
    }

    pub fn relation(&self) -> Arc<dyn Relation> {
        match self {
            Space::Finite(rel) => rel.clone(),
            Space::Line => Arc::new(LineRelation),
            Space::Cantor(_) => Arc::new(PrefixRelation),
        }
    }

    pub fn finite(&self) -> Option<&Arc<FiniteRelation>> {
        match self {
            Space::Finite(rel) => Some(rel),
            _ => None,
        }
    }

    /// The bundled measure of an infinite space.
    pub fn measure(&self) -> Option<Oracle> {
        match self {
            Space::Finite(_) => None,
            Space::Line => Some(Arc::new(Lebesgue::unit())),
            Space::Cantor(coin) => Some(Arc::new(coin.clone())),
        }
    }

    /// Plain numeric codes everywhere, plus `(a,b)` intervals on the line and
    /// `[0101]` bit strings on Cantor space.
    pub fn parse_code(&self, token: &str) -> Option<Code> {
        if let Ok(c) = token.parse::<Code>() {
            return Some(c);
        }
        match self {
            Space::Finite(_) => None,
            Space::Line => {
                let inner = token.strip_prefix('(')?.strip_suffix(')')?;
                let (a, b) = inner.split_once(',')?;
                encode_interval(&parse_rational(a)?, &parse_rational(b)?).ok()
            }
            Space::Cantor(_) => {
                let inner = token.strip_prefix('[')?.strip_suffix(']')?;
                inner.parse::<BitString>().ok().map(|s| s.code())
            }
        }
    }

    pub fn code_name(&self, code: Code) -> String {
        match self {
            Space::Finite(_) => code.to_string(),
            Space::Line => match decode_interval(code) {
                Some((a, b)) => format!("({},{})", format_rational(&a), format_rational(&b)),
                None => code.to_string(),
            },
            Space::Cantor(_) => match BitString::from_code(code) {
                Some(s) => format!("[{s}]"),
                None => code.to_string(),
            },
        }
    }

    pub fn require_finite(&self) -> Result<&Arc<FiniteRelation>> {
        self.finite().ok_or(Error::InfiniteRelation)
    }
}
