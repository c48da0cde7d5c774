use thiserror::Error;

use crate::relation::Code;

#[derive(Debug, Error)]
pub enum Error {
    #[error("subset enumeration over {size} codes exceeds the guard of {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("weight for code {code} must be a strictly positive rational")]
    NonPositiveWeight { code: Code },
    #[error("{0} is not an ideal of the relation")]
    NotAnIdeal(String),
    #[error("relation is not transitive: {0} ≺ {1} and {1} ≺ {2} but not {0} ≺ {2}")]
    NotTransitive(Code, Code, Code),
    #[error("relation has {0} codes; at most {1} are supported for exhaustive enumeration")]
    TooManyCodes(usize, usize),
    #[error("the oracle cannot evaluate this expression exactly")]
    NotExact,
    #[error("expression is outside the oracle's evaluable algebra: {0}")]
    OutsideAlgebra(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operation requires a finite relation")]
    InfiniteRelation,
    #[error("code arithmetic overflowed")]
    CodeOverflow,
    #[error("invalid code {0} for this space")]
    InvalidCode(Code),
    #[error("bias must lie strictly between 0 and 1, got {0}")]
    Bias(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
