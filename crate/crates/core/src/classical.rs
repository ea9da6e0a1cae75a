//! Divided differences, Schubert and Grothendieck polynomials, and classical basis expansions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Family, Monomial, Polynomial, Var};
use crate::memo::Memo;
use crate::permgroup::Permutation;

/// `C(n, k)`, zero unless `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `∂_i` acting on the variables of `family`.
pub fn divided_diff_in(family: Family, i: usize, f: &Polynomial) -> Polynomial {
    let (vi, vj) = (Var { family, index: i }, Var { family, index: i + 1 });
    let mut out = Polynomial::zero();
    for (m, c) in f.terms() {
        let (a, b) = (m.exp(vi), m.exp(vj));
        if a == b {
            continue;
        }
        let (hi, lo, c) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
        let mut base = m.clone();
        base.set_exp(vi, lo);
        base.set_exp(vj, lo);
        for j in 0..hi - lo {
            let mut t = base.clone();
            t.set_exp(vi, lo + hi - lo - 1 - j);
            t.set_exp(vj, lo + j);
            out.add_term(t, c.clone());
        }
    }
    out
}

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`.
pub fn divided_diff(i: usize, f: &Polynomial) -> Polynomial {
    divided_diff_in(Family::X, i, f)
}

/// `π_i = 1 + (1 - x_i) ∂_i` acting on the variables of `family`.
pub fn isobaric_diff_in(family: Family, i: usize, f: &Polynomial) -> Polynomial {
    let d = divided_diff_in(family, i, f);
    let mut out = f + &d;
    out -= &d.mul_monomial(&Monomial::var(Var { family, index: i }));
    out
}

pub fn isobaric_diff(i: usize, f: &Polynomial) -> Polynomial {
    isobaric_diff_in(Family::X, i, f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorKind {
    Partial,
    Pi,
}

/// Applies `op_{i_1} ∘ ⋯ ∘ op_{i_l}` for the word `i_1 … i_l`.
pub fn apply_ops(word: &[usize], f: &Polynomial, kind: OperatorKind, family: Family) -> Polynomial {
    word.iter().rev().fold(f.clone(), |acc, &i| match kind {
        OperatorKind::Partial => divided_diff_in(family, i, &acc),
        OperatorKind::Pi => isobaric_diff_in(family, i, &acc),
    })
}

/// `∂_w` or `π_w` through a reduced word of `w`.
pub fn apply_word(w: &Permutation, f: &Polynomial, kind: OperatorKind, family: Family) -> Polynomial {
    apply_ops(&w.reduced_word(), f, kind, family)
}

/// `x_1^{n-1} x_2^{n-2} ⋯ x_{n-1}`.
pub fn staircase(n: usize) -> Monomial {
    let exps: Vec<u32> = (1..n).map(|i| (n - i) as u32).collect();
    Monomial::from_exps(&exps, &[], &[])
}

static CLASSICAL: Memo<(OperatorKind, Permutation), Polynomial> = Memo::new();

fn classical(kind: OperatorKind, w: &Permutation) -> Polynomial {
    CLASSICAL.get_or_insert_with(&(kind, w.clone()), || {
        let n = w.size();
        match (1..n).find(|&i| !w.has_descent(i)) {
            None => Polynomial::monomial(staircase(n)),
            Some(i) => {
                let above = classical(kind, &w.swap_positions(i, i + 1));
                apply_ops(&[i], &above, kind, Family::X)
            }
        }
    })
}

/// Schubert polynomial `𝔖_w`.
pub fn schubert(w: &Permutation) -> Polynomial {
    classical(OperatorKind::Partial, w)
}

/// Grothendieck polynomial `𝔊_w`.
pub fn grothendieck(w: &Permutation) -> Polynomial {
    classical(OperatorKind::Pi, w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElemKind {
    /// `e_p^k`, elementary symmetric in `x_1..x_k`.
    E,
    /// `f_p^k = e_p(1-x_1, …, 1-x_k)`.
    F,
    /// `g_p^k = Σ_{i=p}^k (-1)^{i-p} C(i-1, p-1) e_i^k`.
    G,
}

fn elementary(p: usize, vars: &[Polynomial]) -> Polynomial {
    let mut row = vec![Polynomial::zero(); p + 1];
    row[0] = Polynomial::one();
    for v in vars {
        for j in (1..=p).rev() {
            let t = &row[j - 1] * v;
            row[j] += &t;
        }
    }
    row.swap_remove(p)
}

/// `e_p^k`, `f_p^k` or `g_p^k`; zero unless `0 ≤ p ≤ k`, and `1` at `p = 0`.
pub fn elem_family(p: usize, k: usize, kind: ElemKind) -> Polynomial {
    if p > k {
        return Polynomial::zero();
    }
    match kind {
        ElemKind::E => elementary(p, &(1..=k).map(Polynomial::x).collect::<Vec<_>>()),
        ElemKind::F => elementary(p, &(1..=k).map(|i| Polynomial::one_minus(Var::x(i))).collect::<Vec<_>>()),
        ElemKind::G if p == 0 => Polynomial::one(),
        ElemKind::G => (p..=k)
            .map(|i| {
                let sign = if (i - p).is_multiple_of(2) { 1 } else { -1 };
                elem_family(i, k, ElemKind::E).scale(&(binomial(i as i64 - 1, p as i64 - 1) * sign))
            })
            .sum(),
    }
}

/// `∏_k family(p_k, k)` for an index vector `p_1 … p_{n-1}`.
pub fn elem_monomial(ps: &[usize], kind: ElemKind) -> Polynomial {
    ps.iter().enumerate().filter(|(_, &p)| p > 0).fold(Polynomial::one(), |acc, (i, &p)| &acc * &elem_family(p, i + 1, kind))
}

/// `𝔥_w = Σ_{v ∈ S_n, v ≥ w} (-1)^{ℓ(v)-ℓ(w)} 𝔊_v`.
pub fn dual_grothendieck(w: &Permutation, n: usize) -> Polynomial {
    let lw = w.length();
    Permutation::all(n)
        .into_iter()
        .filter(|v| w.bruhat_leq(v))
        .map(|v| {
            let g = grothendieck(&v);
            if (v.length() - lw).is_multiple_of(2) {
                g
            } else {
                -g
            }
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Schubert,
    Grothendieck,
    QSchubert,
    QGrothendieck,
}

impl Basis {
    pub fn element(self, w: &Permutation) -> Polynomial {
        match self {
            Basis::Schubert => schubert(w),
            Basis::Grothendieck => grothendieck(w),
            Basis::QSchubert => crate::quantumbasis::quantum_schubert(w),
            Basis::QGrothendieck => crate::quantumbasis::quantum_grothendieck(w),
        }
    }
}

/// A polynomial written as `Σ c_i(q) · basis(w_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub basis: Basis,
    pub entries: Vec<(Polynomial, Permutation)>,
}

impl Expansion {
    pub fn new(basis: Basis) -> Self {
        Expansion { basis, entries: Vec::new() }
    }

    /// `Σ c_i · basis(w_i)`.
    pub fn resum(&self) -> Polynomial {
        self.entries.iter().map(|(c, w)| c * &self.basis.element(w)).sum()
    }

    pub fn coefficient(&self, w: &Permutation) -> Polynomial {
        self.entries.iter().filter(|(_, v)| v == w).map(|(c, _)| c.clone()).sum()
    }

    /// Coefficients merged per permutation, zero entries dropped.
    pub fn as_map(&self) -> BTreeMap<Permutation, Polynomial> {
        let mut out: BTreeMap<Permutation, Polynomial> = BTreeMap::new();
        for (c, w) in &self.entries {
            *out.entry(w.clone()).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn from_map(basis: Basis, map: BTreeMap<Permutation, Polynomial>) -> Self {
        let mut e = Expansion { basis, entries: map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect() };
        e.sort();
        e
    }

    /// Stable sort by `deg(c_i) + ℓ(w_i)`, with `deg` the lowest graded degree of the coefficient.
    pub fn sort(&mut self) {
        self.entries.sort_by_key(|(c, w)| c.min_degree().unwrap_or(0) + w.length() as u64);
    }

    /// Width of the smallest symmetric group containing every permutation.
    pub fn width(&self) -> usize {
        self.entries.iter().map(|(_, w)| w.size()).max().unwrap_or(1)
    }
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            coeff: &'a Polynomial,
            perm: String,
        }
        let n = self.width();
        let entries: Vec<Entry> = self.entries.iter().map(|(c, w)| Entry { coeff: c, perm: w.to_string_n(n) }).collect();
        let mut st = s.serialize_struct("Expansion", 2)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            coeff: Polynomial,
            perm: Permutation,
        }
        #[derive(Deserialize)]
        struct Repr {
            basis: Basis,
            entries: Vec<Entry>,
        }
        let r = Repr::deserialize(d)?;
        Ok(Expansion { basis: r.basis, entries: r.entries.into_iter().map(|e| (e.coeff, e.perm)).collect() })
    }
}

/// Smallest `n` such that `f` lies in `L_n^q`: `x_i` exponents at most `n - i`, `q_i` only for `i < n`.
pub fn minimal_n(f: &Polynomial) -> usize {
    let mut n = 1;
    for (m, _) in f.terms() {
        for (i, &a) in m.x_exps().iter().enumerate() {
            if a > 0 {
                n = n.max(i + 1 + a as usize);
            }
        }
        n = n.max(m.q_exps().len() + 1);
    }
    n
}

/// Default iteration bound for the graded expansion algorithms.
///
/// Basis elements indexed by `S_n` have graded degree below `n(n-1)`, so the lowest degree of the
/// remainder can rise at most that far past the input's own degrees.
pub fn default_guard(f: &Polynomial) -> usize {
    let n = minimal_n(f);
    1 + f.max_degree().unwrap_or(0) as usize + n * (n - 1)
}

/// Expansion in the Schubert basis by peeling lexicographically minimal x-monomials.
///
/// Variables other than `x` are treated as coefficients.
pub fn expand_schubert(f: &Polynomial) -> Expansion {
    let mut rem: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        rem.entry(m.x_exps().to_vec()).or_default().add_term(m.without(Family::X), c.clone());
    }
    rem.retain(|_, c| !c.is_zero());
    let mut out = Expansion::new(Basis::Schubert);
    while let Some((code, c)) = rem.pop_first() {
        let w = Permutation::from_code(&code);
        for (m, d) in schubert(&w).terms() {
            if m.x_exps() == code.as_slice() {
                debug_assert_eq!(*d, BigInt::from(1));
                continue;
            }
            let key = m.x_exps().to_vec();
            debug_assert!(key > code);
            let slot = rem.entry(key.clone()).or_default();
            *slot -= &c.scale(d);
            if slot.is_zero() {
                rem.remove(&key);
            }
        }
        out.entries.push((c, w));
    }
    out.sort();
    out
}

/// Expansion in the Grothendieck basis by repeatedly expanding the lowest graded component.
pub fn expand_grothendieck(f: &Polynomial) -> Result<Expansion> {
    expand_grothendieck_with_guard(f, default_guard(f))
}

pub fn expand_grothendieck_with_guard(f: &Polynomial, guard: usize) -> Result<Expansion> {
    let mut rem = f.clone();
    let mut out = Expansion::new(Basis::Grothendieck);
    let mut iterations = 0;
    while !rem.is_zero() {
        iterations += 1;
        if iterations > guard {
            return Err(Error::IterationGuard(guard));
        }
        for (c, w) in expand_schubert(&rem.lowest_component()).entries {
            rem -= &(&c * &grothendieck(&w));
            out.entries.push((c, w));
        }
    }
    out.sort();
    Ok(out)
}
