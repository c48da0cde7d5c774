//! Countable transitive relations on natural-number codes.
//!
//! A point of the presented space is an ideal of the relation: a non-empty,
//! downward-closed, directed set of codes. Finite relations are stored as a
//! dense boolean matrix; infinite ones implement [`Relation`] directly and
//! decide `precedes` from the structure encoded in the code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub type Code = u128;

/// Outcome of a semidecision run with bounded fuel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Confirmed,
    Refuted,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        }
    }

    pub fn is_confirmed(self) -> bool {
        self == Verdict::Confirmed
    }

    pub fn is_refuted(self) -> bool {
        self == Verdict::Refuted
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Refuted => "refuted",
            Verdict::Unknown => "unknown",
        })
    }
}

pub trait Relation: Send + Sync + fmt::Debug {
    /// Decides `a ≺ b`.
    fn precedes(&self, a: Code, b: Code) -> bool;

    /// The complete code universe, when it is finite.
    fn finite(&self) -> Option<&FiniteRelation> {
        None
    }

    /// Enumerates the codes that take part in the relation.
    fn codes(&self) -> Box<dyn Iterator<Item = Code> + '_>;
}

/// A finite set of codes, kept sorted.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteCodeSet(BTreeSet<Code>);

impl FiniteCodeSet {
    pub fn new() -> Self {
        FiniteCodeSet(BTreeSet::new())
    }

    pub fn singleton(code: Code) -> Self {
        FiniteCodeSet(BTreeSet::from([code]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, code: Code) -> bool {
        self.0.contains(&code)
    }

    pub fn insert(&mut self, code: Code) -> bool {
        self.0.insert(code)
    }

    pub fn iter(&self) -> impl Iterator<Item = Code> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Code> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &FiniteCodeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &FiniteCodeSet) -> bool {
        self.iter().any(|c| other.contains(c))
    }

    pub fn union(&self, other: &FiniteCodeSet) -> FiniteCodeSet {
        FiniteCodeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &FiniteCodeSet) -> FiniteCodeSet {
        FiniteCodeSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &FiniteCodeSet) -> FiniteCodeSet {
        FiniteCodeSet(self.0.difference(&other.0).copied().collect())
    }

    /// All subsets, in order of their bitmask over the sorted elements.
    pub fn subsets(&self) -> Vec<FiniteCodeSet> {
        let elems = self.to_vec();
        subset_masks(elems.len())
            .map(|mask| select(&elems, mask).collect())
            .collect()
    }

    /// Non-empty subsets, in bitmask order.
    pub fn nonempty_subsets(&self) -> Vec<FiniteCodeSet> {
        let mut all = self.subsets();
        all.remove(0);
        all
    }
}

impl FromIterator<Code> for FiniteCodeSet {
    fn from_iter<I: IntoIterator<Item = Code>>(iter: I) -> Self {
        FiniteCodeSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Code; N]> for FiniteCodeSet {
    fn from(codes: [Code; N]) -> Self {
        codes.into_iter().collect()
    }
}

impl fmt::Debug for FiniteCodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FiniteCodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn subset_masks(n: usize) -> impl Iterator<Item = u64> {
    assert!(n < 64, "subset enumeration over {n} elements");
    0..(1u64 << n)
}

pub(crate) fn select<T: Copy>(items: &[T], mask: u64) -> impl Iterator<Item = T> + '_ {
    items
        .iter()
        .enumerate()
        .filter(move |(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
}

pub(crate) fn check_guard(size: usize, guard: usize) -> Result<()> {
    if size > guard {
        Err(Error::GuardExceeded { size, guard })
    } else {
        Ok(())
    }
}

/// A relation on finitely many codes, stored as a dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    codes: FiniteCodeSet,
    index: BTreeMap<Code, usize>,
    matrix: Vec<Vec<bool>>,
}

impl FiniteRelation {
    /// Builds the relation exactly as given and checks transitivity.
    pub fn from_pairs(
        codes: impl IntoIterator<Item = Code>,
        pairs: impl IntoIterator<Item = (Code, Code)>,
    ) -> Result<Self> {
        let rel = Self::raw(codes, pairs);
        rel.check_transitive()?;
        Ok(rel)
    }

    fn raw(
        codes: impl IntoIterator<Item = Code>,
        pairs: impl IntoIterator<Item = (Code, Code)>,
    ) -> Self {
        let pairs: Vec<(Code, Code)> = pairs.into_iter().collect();
        let codes: FiniteCodeSet = codes
            .into_iter()
            .chain(pairs.iter().flat_map(|&(a, b)| [a, b]))
            .collect();
        let index: BTreeMap<Code, usize> = codes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let n = codes.len();
        let mut matrix = vec![vec![false; n]; n];
        for (a, b) in pairs {
            matrix[index[&a]][index[&b]] = true;
        }
        FiniteRelation {
            codes,
            index,
            matrix,
        }
    }

    pub fn code_set(&self) -> &FiniteCodeSet {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn pairs(&self) -> Vec<(Code, Code)> {
        let codes = self.codes.to_vec();
        let mut out = Vec::new();
        for (i, &a) in codes.iter().enumerate() {
            for (j, &b) in codes.iter().enumerate() {
                if self.matrix[i][j] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn check_transitive(&self) -> Result<()> {
        let codes = self.codes.to_vec();
        let n = codes.len();
        for a in 0..n {
            for b in 0..n {
                if !self.matrix[a][b] {
                    continue;
                }
                for c in 0..n {
                    if self.matrix[b][c] && !self.matrix[a][c] {
                        return Err(Error::NotTransitive(codes[a], codes[b], codes[c]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.matrix[i][i])
    }

    /// Codes strictly below `code` (all `m` with `m ≺ code`).
    pub fn predecessors(&self, code: Code) -> FiniteCodeSet {
        self.codes
            .iter()
            .filter(|&m| self.precedes(m, code))
            .collect()
    }
}

impl Relation for FiniteRelation {
    fn precedes(&self, a: Code, b: Code) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&i), Some(&j)) => self.matrix[i][j],
            _ => false,
        }
    }

    fn finite(&self) -> Option<&FiniteRelation> {
        Some(self)
    }

    fn codes(&self) -> Box<dyn Iterator<Item = Code> + '_> {
        Box::new(self.codes.iter())
    }
}

impl fmt::Debug for FiniteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRelation")
            .field("codes", &self.codes)
            .field("pairs", &self.pairs())
            .finish()
    }
}

/// The smallest transitive relation containing `edges`.
pub fn transitive_closure(edges: impl IntoIterator<Item = (Code, Code)>) -> FiniteRelation {
    transitive_closure_with_codes(std::iter::empty(), edges)
}

/// As [`transitive_closure`], with extra codes that may be unrelated to anything.
pub fn transitive_closure_with_codes(
    codes: impl IntoIterator<Item = Code>,
    edges: impl IntoIterator<Item = (Code, Code)>,
) -> FiniteRelation {
    let mut rel = FiniteRelation::raw(codes, edges);
    let n = rel.len();
    // Warshall
    for k in 0..n {
        for i in 0..n {
            if !rel.matrix[i][k] {
                continue;
            }
            for j in 0..n {
                if rel.matrix[k][j] {
                    rel.matrix[i][j] = true;
                }
            }
        }
    }
    rel
}

/// The two-point Sierpinski space: codes 0 and 1 with 0≺0, 0≺1, 1≺1.
///
/// Ideals are `{0}` (bottom) and `{0, 1}` (top); `[1]` is the open point.
pub fn sierpinski() -> FiniteRelation {
    transitive_closure([(0, 0), (0, 1), (1, 1)])
}
