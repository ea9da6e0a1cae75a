//! `qgroth verify`: identity checks over ranges of instances.

use clap::ValueEnum;
use qgroth::chains::{
    descent_hypothesis, dunkl_commute_counterexample, monk_paths, monk_product, pieri_product, quantum_pieri_product_with, relations_counterexample,
    verify_gp_action, verify_main, verify_section5, ChainReading, Section5,
};
use qgroth::classical::grothendieck;
use qgroth::doublepoly::{cauchy_check, recovery_check, CauchyKind, RecoverKind};
use qgroth::quantumbasis::{quantize_k, Route};
use qgroth::Permutation;
use rayon::prelude::*;

use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    MonkX,
    MonkSk,
    Pieri,
    QuantumPieriConjecture,
    Cauchy,
    Recovery,
    Main5,
    DunklCommute,
    QuantizeConsistency,
    Relations,
}

/// One checked instance: its label and the verdict, or the error it raised.
type Verdict = (String, Result<bool, String>);

/// Permutations of `S_n` ordered by length, so the first failure is a smallest one.
fn perms_by_length(n: usize) -> Vec<Permutation> {
    let mut all = Permutation::all(n);
    all.sort_by_key(|w| w.length());
    all
}

fn range(given: Option<usize>, lo: usize, hi: usize) -> Vec<usize> {
    match given {
        Some(v) => vec![v],
        None => (lo..=hi).collect(),
    }
}

/// `(w, k, p)` for `w ∈ S_n`, the given or all `k ≤ kmax`, and the given or all `1 ≤ p ≤ k`.
fn wkp(n: usize, k: Option<usize>, p: Option<usize>, kmax: usize) -> Vec<(Permutation, usize, usize)> {
    let mut out = Vec::new();
    for w in perms_by_length(n) {
        for k in range(k, 1, kmax) {
            for p in range(p, 1, k) {
                out.push((w.clone(), k, p));
            }
        }
    }
    out
}

fn check_all<T: Sync>(items: &[T], f: impl Fn(&T) -> Verdict + Sync + Send) -> Vec<Verdict> {
    items.par_iter().map(f).collect()
}

fn lift(r: qgroth::Result<bool>) -> Result<bool, String> {
    r.map_err(|e| e.to_string())
}

fn report(identity: Identity, n: usize, verdicts: &[Verdict]) -> u8 {
    let failures: Vec<&Verdict> = verdicts.iter().filter(|(_, v)| !matches!(v, Ok(true))).collect();
    println!("identity: {}", identity.to_possible_value().expect("named").get_name());
    println!("n: {n}");
    println!("checked: {}", verdicts.len());
    println!("failures: {}", failures.len());
    match failures.first() {
        None => {
            println!("result: pass");
            0
        }
        Some((label, v)) => {
            match v {
                Err(e) => println!("counterexample: {label} (error: {e})"),
                _ => println!("counterexample: {label}"),
            }
            println!("result: fail");
            1
        }
    }
}

fn quantum_pieri(n: usize, k: Option<usize>, p: Option<usize>) -> u8 {
    let cases = wkp(n, k, p, n);
    println!("identity: quantum-pieri-conjecture");
    println!("n: {n}");
    println!("conjectural: true");
    for (name, reading) in [("literal", ChainReading::Literal), ("no-backtrack", ChainReading::NoBacktrack)] {
        let verdicts = check_all(&cases, |(w, k, p)| {
            (format!("w={} k={k} p={p}", w.compact(n)), lift(quantum_pieri_product_with(w, *p, *k, reading).map(|r| r.passed())))
        });
        let bad: Vec<&Verdict> = verdicts.iter().filter(|(_, v)| !matches!(v, Ok(true))).collect();
        let first = bad.first().map(|(l, _)| l.as_str()).unwrap_or("none");
        println!("{name}: {} of {} agree; first counterexample: {first}", verdicts.len() - bad.len(), verdicts.len());
    }
    0
}

fn main5(n: usize, k: Option<usize>, p: Option<usize>) -> Result<Vec<Verdict>, Failure> {
    if k.is_none() && p.is_none() {
        let mut out = Vec::new();
        for which in [Section5::Main, Section5::GpAction, Section5::ProductAction, Section5::QuantMap] {
            let r = verify_section5(which, n)?;
            let name = format!("{which:?}");
            out.extend(r.failures.iter().map(|f| (format!("{name} {f}"), Ok(false))));
            out.extend(std::iter::repeat_n((name, Ok(true)), r.checked - r.failures.len()));
        }
        // Failures first so the report names one.
        out.sort_by_key(|(_, v)| matches!(v, Ok(true)));
        return Ok(out);
    }
    if k.is_some_and(|k| k == 0 || k >= n) {
        return Err(Failure::Usage(format!("--k must satisfy 1 ≤ k < n = {n}")));
    }
    let cases: Vec<_> = wkp(n, k, p, n - 1).into_iter().filter(|(w, k, _)| descent_hypothesis(w, *k)).collect();
    let mut out = check_all(&cases, |(w, k, p)| (format!("main w={} p={p} k={k}", w.compact(n)), lift(verify_main(w, *p, *k, n))));
    out.extend(check_all(&cases, |(w, k, p)| (format!("gp_action w={} p={p} k={k}", w.compact(n)), lift(verify_gp_action(w, *p, *k, n)))));
    Ok(out)
}

pub fn run(identity: Identity, n: usize, k: Option<usize>, p: Option<usize>) -> Outcome {
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    if let (Some(k), Some(p)) = (k, p) {
        if p == 0 || p > k {
            return Err(Failure::Usage(format!("--p must satisfy 1 ≤ p ≤ k, got p = {p}, k = {k}")));
        }
    }
    let verdicts: Vec<Verdict> = match identity {
        Identity::QuantumPieriConjecture => return Ok(quantum_pieri(n, k, p)),
        Identity::MonkX | Identity::MonkSk => {
            let cases: Vec<(Permutation, usize)> = perms_by_length(n).into_iter().flat_map(|w| range(k, 1, n).into_iter().map(move |k| (w.clone(), k))).collect();
            check_all(&cases, |(w, k)| {
                let r = if identity == Identity::MonkX { monk_paths(w, *k).map(|r| r.agrees) } else { monk_product(w, *k).map(|r| r.passed()) };
                (format!("w={} k={k}", w.compact(n)), lift(r))
            })
        }
        Identity::Pieri => check_all(&wkp(n, k, p, n), |(w, k, p)| (format!("w={} k={k} p={p}", w.compact(n)), lift(pieri_product(w, *p, *k).map(|r| r.passed())))),
        Identity::Cauchy => {
            let kinds = [CauchyKind::GrothendieckClassical, CauchyKind::QSchubert, CauchyKind::QGrothendieck];
            check_all(&kinds, |kind| (format!("{kind:?}"), Ok(cauchy_check(n, *kind))))
        }
        Identity::Recovery => {
            let cases: Vec<(Permutation, RecoverKind)> =
                perms_by_length(n).into_iter().flat_map(|w| [RecoverKind::Schubert, RecoverKind::Grothendieck].map(|kind| (w.clone(), kind))).collect();
            check_all(&cases, |(w, kind)| (format!("{kind:?} w={}", w.compact(n)), Ok(recovery_check(w, n, *kind))))
        }
        Identity::Main5 => main5(n, k, p)?,
        Identity::DunklCommute => vec![match dunkl_commute_counterexample(n) {
            Ok(None) => ("all pairs".into(), Ok(true)),
            Ok(Some(c)) => (c, Ok(false)),
            Err(e) => ("evaluation".into(), Err(e.to_string())),
        }],
        Identity::QuantizeConsistency => check_all(&perms_by_length(n), |w| {
            let g = grothendieck(w);
            let routes: Result<Vec<_>, _> = [Route::E, Route::F, Route::G].iter().map(|r| quantize_k(&g, n, *r)).collect();
            (format!("w={}", w.compact(n)), lift(routes.map(|v| v[0] == v[1] && v[1] == v[2])))
        }),
        Identity::Relations => vec![match relations_counterexample(n) {
            None => ("relations (0)-(3)".into(), Ok(true)),
            Some(c) => (c, Ok(false)),
        }],
    };
    Ok(report(identity, n, &verdicts))
}
