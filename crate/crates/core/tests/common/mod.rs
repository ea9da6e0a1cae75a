#![allow(dead_code)]

pub mod families;

use num_bigint::BigInt;
use proptest::prelude::*;
use qgroth::{Monomial, Permutation, Polynomial};

pub fn p(s: &str) -> Polynomial {
    s.parse().unwrap()
}

pub fn w(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Random polynomial with at most `terms` terms in `x_1..x_nx` and `q_1..q_nq`.
pub fn poly(nx: usize, nq: usize, max_exp: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    let mono = (prop::collection::vec(0..=max_exp, nx), prop::collection::vec(0..=1u32, nq));
    prop::collection::vec((mono, -6i64..=6), 0..=terms).prop_map(|ts| {
        Polynomial::from_terms(ts.into_iter().map(|((x, q), c)| (Monomial::from_exps(&x, &q, &[]), BigInt::from(c))))
    })
}

/// Whether the rows and columns of a square matrix can be reordered to make it triangular with
/// ones on the diagonal. Rows are given as maps from column keys to nonzero entries.
pub fn is_unitriangular<K: Ord + Clone, V>(rows: &[std::collections::BTreeMap<K, V>], is_one: impl Fn(&V) -> bool) -> bool {
    let cols: std::collections::BTreeSet<K> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    if cols.len() != rows.len() {
        return false;
    }
    let mut live_rows: Vec<usize> = (0..rows.len()).collect();
    let mut live_cols = cols;
    while !live_rows.is_empty() {
        let pick = live_rows.iter().position(|&r| {
            let mut entries = rows[r].iter().filter(|(k, _)| live_cols.contains(*k));
            matches!((entries.next(), entries.next()), (Some((_, v)), None) if is_one(v))
        });
        let Some(pos) = pick else { return false };
        let r = live_rows.swap_remove(pos);
        let col = rows[r].keys().find(|k| live_cols.contains(*k)).unwrap().clone();
        live_cols.remove(&col);
    }
    true
}
