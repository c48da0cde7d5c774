//! `g_V`: from an ideal of simple valuations back to a valuation.

use std::sync::Arc;

use num_traits::Zero;

use crate::lower::LowerReal;
use crate::oracle::CodeEnumeration;
use crate::rational::Rational;
use crate::relation::{Code, Relation};
use crate::simple::{SimpleValuation, ValuationChain};

/// Mass of `r` on codes lying strictly above some member of `a`.
pub fn mass_above(rel: &dyn Relation, r: &SimpleValuation, a: &[Code]) -> Rational {
    r.iter()
        .filter(|&(c, _)| a.iter().any(|&b| rel.precedes(b, c)))
        .fold(Rational::zero(), |acc, (_, w)| acc + w)
}

struct GvStream {
    rel: Arc<dyn Relation>,
    chain: ValuationChain,
    a: CodeEnumeration,
    seen: Vec<Code>,
    a_done: bool,
    elems: Vec<SimpleValuation>,
    chain_done: bool,
    n: usize,
    best: Rational,
}

impl Iterator for GvStream {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let n = self.n;
        self.n += 1;
        let mut grew = false;
        if !self.a_done {
            match self.a.get(n) {
                Some(code) if !self.seen.contains(&code) => {
                    self.seen.push(code);
                    grew = true;
                }
                Some(_) => {}
                None => self.a_done = true,
            }
        }
        let mut fresh = None;
        if !self.chain_done {
            match self.chain.get(n) {
                Some(r) => {
                    self.elems.push(r);
                    fresh = self.elems.last();
                }
                None => self.chain_done = true,
            }
        }
        let rel = self.rel.as_ref();
        let candidates: Box<dyn Iterator<Item = &SimpleValuation>> = if grew {
            Box::new(self.elems.iter())
        } else {
            Box::new(fresh.into_iter())
        };
        for r in candidates {
            let m = mass_above(rel, r, &self.seen);
            if m > self.best {
                self.best = m;
            }
        }
        Some(self.best.clone())
    }
}

/// `g_V(I)(U)` for `U = ∪_{a∈A} [a]`, as a lower real.
///
/// At fuel `n` the stream has seen chain elements `r_0 … r_n` and codes
/// `a_0 … a_n`; each element is cut down to the codes above a seen `a`
/// and the largest remaining mass is reported.
pub fn gv_eval(rel: Arc<dyn Relation>, chain: ValuationChain, a: CodeEnumeration) -> LowerReal {
    LowerReal::from_stream(move || GvStream {
        rel: Arc::clone(&rel),
        chain: chain.clone(),
        a: a.clone(),
        seen: Vec::new(),
        a_done: false,
        elems: Vec::new(),
        chain_done: false,
        n: 0,
        best: Rational::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Chain;
    use crate::rational::{int, rat};
    use crate::relation::sierpinski;

    fn staircase() -> ValuationChain {
        Chain::generated(|k| {
            let i = k as u32 + 1;
            SimpleValuation::single(0, int(1) - Rational::new(1.into(), (1i64 << i).into())).unwrap()
        })
    }

    #[test]
    fn sierpinski_staircase_values() {
        let s2: Arc<dyn Relation> = Arc::new(sierpinski());
        let bottom = gv_eval(s2.clone(), staircase(), CodeEnumeration::Finite(vec![0]));
        assert_eq!(bottom.prefix(3), vec![rat(1, 2), rat(3, 4), rat(7, 8)]);
        let top = gv_eval(s2.clone(), staircase(), CodeEnumeration::Finite(vec![1]));
        assert!(top.prefix(10).iter().all(Zero::is_zero));
        let empty = gv_eval(s2, staircase(), CodeEnumeration::Finite(vec![]));
        assert!(empty.prefix(10).iter().all(Zero::is_zero));
    }

    #[test]
    fn late_codes_trigger_recomputation() {
        let s2: Arc<dyn Relation> = Arc::new(sierpinski());
        let late = CodeEnumeration::Generated(Arc::new(|i| (i == 3).then_some(0).or(Some(1))));
        let l = gv_eval(s2, staircase(), late);
        assert_eq!(l.at(2), int(0));
        assert_eq!(l.at(3), rat(15, 16));
    }
}
