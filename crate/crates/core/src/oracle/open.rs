use std::fmt;
use std::sync::Arc;

use crate::relation::{Code, FiniteCodeSet};

/// A code enumeration `A` presenting the open `∪_{a∈A} [a]`.
#[derive(Clone)]
pub enum CodeEnumeration {
    Finite(Vec<Code>),
    /// `None` ends the enumeration.
    Generated(Arc<dyn Fn(usize) -> Option<Code> + Send + Sync>),
}

impl CodeEnumeration {
    pub fn get(&self, i: usize) -> Option<Code> {
        match self {
            CodeEnumeration::Finite(v) => v.get(i).copied(),
            CodeEnumeration::Generated(f) => f(i),
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Code> {
        (0..n).map_while(|i| self.get(i)).collect()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CodeEnumeration::Finite(_))
    }
}

impl From<&FiniteCodeSet> for CodeEnumeration {
    fn from(set: &FiniteCodeSet) -> Self {
        CodeEnumeration::Finite(set.to_vec())
    }
}

/// Open-set expressions over basic opens `[n]`.
///
/// `Intersect` of an empty family denotes the whole space.
#[derive(Clone)]
pub enum OpenExpr {
    Empty,
    Basic(Code),
    Union(Vec<OpenExpr>),
    Intersect(Vec<OpenExpr>),
    Enumerated(CodeEnumeration),
}

impl OpenExpr {
    pub fn basics(codes: impl IntoIterator<Item = Code>) -> Self {
        OpenExpr::Enumerated(CodeEnumeration::Finite(codes.into_iter().collect()))
    }

    pub fn union(self, other: OpenExpr) -> OpenExpr {
        OpenExpr::Union(vec![self, other])
    }

    pub fn intersect(self, other: OpenExpr) -> OpenExpr {
        OpenExpr::Intersect(vec![self, other])
    }

    /// Cuts every generated enumeration down to its first `fuel` codes.
    pub fn truncate(&self, fuel: usize) -> OpenExpr {
        match self {
            OpenExpr::Enumerated(e @ CodeEnumeration::Generated(_)) => OpenExpr::basics(e.prefix(fuel)),
            OpenExpr::Union(v) => OpenExpr::Union(v.iter().map(|e| e.truncate(fuel)).collect()),
            OpenExpr::Intersect(v) => {
                OpenExpr::Intersect(v.iter().map(|e| e.truncate(fuel)).collect())
            }
            other => other.clone(),
        }
    }

    /// No generated enumerations anywhere in the expression.
    pub fn is_finite(&self) -> bool {
        match self {
            OpenExpr::Empty | OpenExpr::Basic(_) => true,
            OpenExpr::Union(v) | OpenExpr::Intersect(v) => v.iter().all(OpenExpr::is_finite),
            OpenExpr::Enumerated(e) => e.is_finite(),
        }
    }
}

impl fmt::Display for OpenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[OpenExpr], sep: &str, empty: &str) -> fmt::Result {
            if items.is_empty() {
                return f.write_str(empty);
            }
            f.write_str("(")?;
            for (i, e) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")
        }
        match self {
            OpenExpr::Empty => f.write_str("∅"),
            OpenExpr::Basic(c) => write!(f, "[{c}]"),
            OpenExpr::Union(v) => join(f, v, " ∪ ", "∅"),
            OpenExpr::Intersect(v) => join(f, v, " ∩ ", "X"),
            OpenExpr::Enumerated(CodeEnumeration::Finite(v)) => {
                let basics: Vec<OpenExpr> = v.iter().map(|&c| OpenExpr::Basic(c)).collect();
                join(f, &basics, " ∪ ", "∅")
            }
            OpenExpr::Enumerated(CodeEnumeration::Generated(_)) => f.write_str("∪[a_k]"),
        }
    }
}

impl fmt::Debug for OpenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
