//! Expansion in the quantum Schubert and quantum Grothendieck bases, and extraction of the
//! quantum K-invariants they conjecturally encode.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::classical::{default_guard, expand_schubert, Basis, Expansion};
use crate::error::{Error, Result};
use crate::exactpoly::{Family, Polynomial};
use crate::permgroup::Permutation;
use crate::quantumbasis::{quantum_grothendieck, quantum_schubert};

/// Expansion in quantum Schubert polynomials, peeling the part of lowest total q-degree.
pub fn expand_qschubert(f: &Polynomial) -> Result<Expansion> {
    expand_qschubert_with_guard(f, default_guard(f))
}

pub fn expand_qschubert_with_guard(f: &Polynomial, guard: usize) -> Result<Expansion> {
    let mut rem = f.clone();
    let mut out = Expansion::new(Basis::QSchubert);
    let mut iterations = 0;
    while !rem.is_zero() {
        iterations += 1;
        if iterations > guard {
            return Err(Error::IterationGuard(guard));
        }
        for (c, w) in expand_schubert(&rem.lowest_in_family(Family::Q)).entries {
            rem -= &(&c * &quantum_schubert(&w));
            out.entries.push((c, w));
        }
    }
    out.sort();
    Ok(out)
}

/// Expansion in quantum Grothendieck polynomials; the result is ordered by `deg(c_i) + ℓ(w_i)`.
pub fn expand_qgrothendieck(f: &Polynomial) -> Result<Expansion> {
    expand_qgrothendieck_with_guard(f, default_guard(f))
}

pub fn expand_qgrothendieck_with_guard(f: &Polynomial, guard: usize) -> Result<Expansion> {
    let blocks = expand_qgrothendieck_blocks(f, guard)?;
    let mut out = Expansion::new(Basis::QGrothendieck);
    out.entries = blocks.into_iter().flat_map(|b| b.entries).collect();
    out.sort();
    Ok(out)
}

/// The per-iteration outputs: block `i` is the quantum Schubert expansion of the lowest component
/// at iteration `i`.
pub fn expand_qgrothendieck_blocks(f: &Polynomial, guard: usize) -> Result<Vec<Expansion>> {
    let mut rem = f.clone();
    let mut blocks = Vec::new();
    while !rem.is_zero() {
        if blocks.len() >= guard {
            return Err(Error::IterationGuard(guard));
        }
        let block = expand_qschubert_with_guard(&rem.lowest_component(), guard)?;
        for (c, w) in &block.entries {
            rem -= &(c * &quantum_grothendieck(w));
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// `N_{uv}^w(d)`, keyed by `(w, d)` with `d` a trimmed multidegree.
pub type Invariants = BTreeMap<(Permutation, Vec<u32>), BigInt>;

/// Coefficients of `𝔊_u^q 𝔊_v^q` in the quantum Grothendieck basis, split by powers of `q`.
///
/// These equal the quantum K-invariants only under the conjecture that `𝔊_w^q` represent
/// Schubert classes in quantum K-theory.
pub fn gw_invariants(u: &Permutation, v: &Permutation) -> Result<Invariants> {
    gw_invariants_with_guard(u, v, None)
}

pub fn gw_invariants_with_guard(u: &Permutation, v: &Permutation, guard: Option<usize>) -> Result<Invariants> {
    let prod = quantum_grothendieck(u) * quantum_grothendieck(v);
    let guard = guard.unwrap_or_else(|| default_guard(&prod));
    let exp = expand_qgrothendieck_with_guard(&prod, guard)?;
    let mut out = Invariants::new();
    for (w, c) in exp.as_map() {
        for (m, n) in c.terms() {
            out.insert((w.clone(), m.q_exps().to_vec()), n.clone());
        }
    }
    Ok(out)
}

/// How the q-part enters the sign exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignReading {
    /// `Σ d_i + ℓ(w) - ℓ(u) - ℓ(v)`, as printed.
    Literal,
    /// `2 Σ d_i + ℓ(w) - ℓ(u) - ℓ(v)`, counting `deg q_i = 2`.
    Graded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignEntry {
    pub w: Permutation,
    pub d: Vec<u32>,
    pub n: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub reading: SignReading,
    pub entries: Vec<SignEntry>,
    pub all_pass: bool,
    pub conjectural: bool,
}

impl SignReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &SignEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// Checks `(-1)^{e} N_{uv}^w(d) ≥ 0` for every invariant, with the exponent `e` per `reading`.
pub fn sign_alternation(inv: &Invariants, u: &Permutation, v: &Permutation, reading: SignReading) -> SignReport {
    let base = -(u.length() as i64) - v.length() as i64;
    let entries: Vec<SignEntry> = inv
        .iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|((w, d), n)| {
            let sd: i64 = d.iter().map(|&x| x as i64).sum();
            let e = base + w.length() as i64 + if reading == SignReading::Graded { 2 * sd } else { sd };
            let signed = if e.rem_euclid(2) == 0 { n.clone() } else { -n };
            SignEntry { w: w.clone(), d: d.clone(), n: n.to_string(), pass: !signed.is_negative() }
        })
        .collect();
    let all_pass = entries.iter().all(|e| e.pass);
    SignReport { reading, entries, all_pass, conjectural: true }
}
