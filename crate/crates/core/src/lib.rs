//! Valuations on spaces presented as ideals of a transitive relation.
//!
//! A countable transitive relation `≺` on codes presents a space whose points
//! are the ideals of `≺`. Simple valuations (finite maps from codes to positive
//! rationals) carry their own relation `≺_V`, and the maps [`conversion::fv`]
//! and [`conversion::gv`] translate between valuations on the original space
//! and ideals of `≺_V`. All arithmetic is exact.

pub mod chain;
pub mod cli;
pub mod conversion;
pub mod error;
pub mod gallery;
pub mod ideal;
pub mod lower;
pub mod oracle;
pub mod rational;
pub mod relation;
pub mod report;
pub mod simple;
pub mod space;
pub mod text;
pub mod upper;

pub use chain::Chain;
pub use error::{Error, Result};
pub use lower::LowerReal;
pub use oracle::{OpenExpr, Oracle, Valuation};
pub use rational::{ExtendedRational, Rational};
pub use relation::{Code, FiniteCodeSet, FiniteRelation, Relation, Verdict};
pub use simple::SimpleValuation;
