#![allow(dead_code)]

use idealval::rational::rat;
use idealval::relation::{transitive_closure_with_codes, Code, FiniteRelation};
use idealval::SimpleValuation;
use proptest::prelude::*;

/// Transitive closure of an edge mask over codes `0..n`.
pub fn relation_from_mask(n: usize, mask: u64) -> FiniteRelation {
    let codes: Vec<Code> = (0..n as Code).collect();
    let pairs = (0..n * n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| ((i / n) as Code, (i % n) as Code));
    transitive_closure_with_codes(codes, pairs)
}

pub fn arb_relation(max_codes: usize) -> impl Strategy<Value = FiniteRelation> {
    (1..=max_codes, any::<u64>()).prop_map(|(n, mask)| relation_from_mask(n, mask))
}

/// Simple valuations with weights in `{1/8, …, 15/8}` on codes below `n`.
pub fn arb_simple(n: usize, max_len: usize) -> impl Strategy<Value = SimpleValuation> {
    proptest::collection::btree_map(0..n as Code, 1..16i64, 0..=max_len)
        .prop_map(|m| SimpleValuation::new(m.into_iter().map(|(c, w)| (c, rat(w, 8)))).unwrap())
}

pub fn sv(entries: &[(Code, (i64, i64))]) -> SimpleValuation {
    SimpleValuation::new(entries.iter().map(|&(c, (n, d))| (c, rat(n, d)))).unwrap()
}
