//! Lower reals: values in `[0, ∞]` known only through rational lower bounds.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::rational::{int, ExtendedRational, Rational};
use crate::relation::Verdict;

type Indexed = Arc<dyn Fn(usize) -> Rational + Send + Sync>;
type Streamed = Arc<dyn Fn() -> Box<dyn Iterator<Item = Rational> + Send> + Send + Sync>;

#[derive(Clone)]
enum Source {
    Indexed(Indexed),
    Streamed(Streamed),
}

/// A non-decreasing sequence of rational lower bounds `ℓ_0 ≤ ℓ_1 ≤ …`,
/// optionally carrying the exact value it converges to.
#[derive(Clone)]
pub struct LowerReal {
    source: Source,
    exact: Option<ExtendedRational>,
}

impl LowerReal {
    /// The constant stream at a known value; `∞` is approached by `ℓ_n = n`.
    pub fn exact(value: ExtendedRational) -> Self {
        let source: Indexed = match &value {
            ExtendedRational::Finite(q) => {
                let q = q.clone();
                Arc::new(move |_| q.clone())
            }
            ExtendedRational::Infinite => Arc::new(|n| int(n as i64)),
        };
        LowerReal {
            source: Source::Indexed(source),
            exact: Some(value),
        }
    }

    pub fn zero() -> Self {
        Self::exact(ExtendedRational::zero())
    }

    /// `approx(n)` must be non-decreasing in `n`.
    pub fn from_fn(approx: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        LowerReal {
            source: Source::Indexed(Arc::new(approx)),
            exact: None,
        }
    }

    /// Each call of `start` yields a fresh non-decreasing stream; a finite
    /// stream is extended by repeating its last value.
    pub fn from_stream<I>(start: impl Fn() -> I + Send + Sync + 'static) -> Self
    where
        I: Iterator<Item = Rational> + Send + 'static,
    {
        LowerReal {
            source: Source::Streamed(Arc::new(move || Box::new(start()))),
            exact: None,
        }
    }

    pub fn with_exact(mut self, exact: Option<ExtendedRational>) -> Self {
        self.exact = exact;
        self
    }

    pub fn exact_value(&self) -> Option<&ExtendedRational> {
        self.exact.as_ref()
    }

    pub fn approximations(&self) -> Box<dyn Iterator<Item = Rational> + Send> {
        match &self.source {
            Source::Indexed(f) => {
                let f = Arc::clone(f);
                Box::new((0..).map(move |n| f(n)))
            }
            Source::Streamed(start) => {
                let mut inner = start();
                let mut last = Rational::zero();
                Box::new(std::iter::from_fn(move || {
                    if let Some(x) = inner.next() {
                        last = x;
                    }
                    Some(last.clone())
                }))
            }
        }
    }

    /// `ℓ_0, …, ℓ_{n-1}`.
    pub fn prefix(&self, n: usize) -> Vec<Rational> {
        self.approximations().take(n).collect()
    }

    /// `ℓ_fuel`.
    pub fn at(&self, fuel: usize) -> Rational {
        match &self.source {
            Source::Indexed(f) => f(fuel),
            Source::Streamed(_) => self.approximations().nth(fuel).expect("infinite stream"),
        }
    }

    /// Decides `value > q` when the exact value is known; otherwise
    /// semidecides it over `fuel + 1` approximations.
    pub fn exceeds(&self, q: &Rational, fuel: usize) -> Verdict {
        if let Some(v) = &self.exact {
            return Verdict::from_bool(v.exceeds(q));
        }
        if self.approximations().take(fuel + 1).any(|l| &l > q) {
            Verdict::Confirmed
        } else {
            Verdict::Unknown
        }
    }
}

impl fmt::Debug for LowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LowerReal")
            .field("exact", &self.exact)
            .finish_non_exhaustive()
    }
}
