//! Quantum elementary families, the quantization maps, and quantum Schubert and Grothendieck
//! polynomials.
//!
//! Indexing convention: every family indexed by `(p, k)` vanishes unless `0 ≤ p ≤ k`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classical::{binomial, elem_monomial, expand_schubert, grothendieck, schubert, ElemKind};
use crate::error::{Error, Result};
use crate::exactpoly::{Family, Polynomial, Var};
use crate::memo::Memo;
use crate::permgroup::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    /// Specialization `q_k = 0`.
    Bar,
    /// Only for `F`: the companion family `F̃`.
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Fam {
    E,
    F,
    HatE,
    G,
}

static FAMILIES: Memo<(Fam, Variant, usize, usize), Polynomial> = Memo::new();

fn q_or_zero(i: usize) -> Polynomial {
    if i == 0 {
        Polynomial::zero()
    } else {
        Polynomial::q(i)
    }
}

/// Quantum elementary polynomial `E_p^k`, the coefficient of `λ^p` in `det(1 + λΓ_k)`.
pub fn quantum_e(p: usize, k: usize) -> Polynomial {
    if p > k {
        return Polynomial::zero();
    }
    if p == 0 {
        return Polynomial::one();
    }
    FAMILIES.get_or_insert_with(&(Fam::E, Variant::Plain, p, k), || {
        let mut out = quantum_e(p, k - 1) + Polynomial::x(k) * quantum_e(p - 1, k - 1);
        if k >= 2 && p >= 2 {
            out += q_or_zero(k - 1) * quantum_e(p - 2, k - 2);
        }
        out
    })
}

fn subsets(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..=k {
            if k - i + 1 < p - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, k, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, k, p, &mut Vec::new(), &mut out);
    out
}

/// `F_p^k`, `F̄_p^k = F_p^k|_{q_k=0}` or `F̃_p^k`, each by its subset-sum definition.
pub fn f_quantum(p: usize, k: usize, variant: Variant) -> Polynomial {
    if p > k {
        return Polynomial::zero();
    }
    if p == 0 {
        return Polynomial::one();
    }
    FAMILIES.get_or_insert_with(&(Fam::F, variant, p, k), || match variant {
        Variant::Bar => f_quantum(p, k, Variant::Plain).set_zero(|v| v == Var::q(k)),
        Variant::Plain => subsets(k, p)
            .into_iter()
            .map(|set| {
                let mut t = Polynomial::one();
                for &i in &set {
                    t = t * Polynomial::one_minus(Var::x(i));
                    if !set.contains(&(i + 1)) {
                        t = t * Polynomial::one_minus(Var::q(i));
                    }
                }
                t
            })
            .sum(),
        Variant::Tilde => subsets(k, p)
            .into_iter()
            .map(|set| {
                let mut t = Polynomial::one();
                for &i in &set {
                    t = t * Polynomial::x(i);
                    if i > 1 && !set.contains(&(i - 1)) {
                        t = t * Polynomial::one_minus(Var::q(i - 1));
                    }
                }
                t
            })
            .sum(),
    })
}

/// `Ê_p^k = Σ_{i=0}^p (-1)^i C(k-i, p-i) F_i^k`, or `Ē_p^k = Ê_p^k|_{q_k=0}`.
pub fn hat_e(p: usize, k: usize, variant: Variant) -> Polynomial {
    if p > k {
        return Polynomial::zero();
    }
    FAMILIES.get_or_insert_with(&(Fam::HatE, variant, p, k), || match variant {
        Variant::Bar | Variant::Tilde => hat_e(p, k, Variant::Plain).set_zero(|v| v == Var::q(k)),
        Variant::Plain => (0..=p)
            .map(|i| {
                let c = binomial((k - i) as i64, (p - i) as i64) * if i % 2 == 0 { 1 } else { -1 };
                f_quantum(i, k, Variant::Plain).scale(&c)
            })
            .sum(),
    })
}

/// `G_p^k = Σ_{i=p}^k (-1)^{i-p} C(i-1, p-1) Ê_i^k` with `G_0^k = 1`, or `Ḡ_p^k = G_p^k|_{q_k=0}`.
pub fn g_quantum(p: usize, k: usize, variant: Variant) -> Polynomial {
    if p > k {
        return Polynomial::zero();
    }
    if p == 0 {
        return Polynomial::one();
    }
    FAMILIES.get_or_insert_with(&(Fam::G, variant, p, k), || match variant {
        Variant::Bar | Variant::Tilde => g_quantum(p, k, Variant::Plain).set_zero(|v| v == Var::q(k)),
        Variant::Plain => (p..=k)
            .map(|i| {
                let c = binomial(i as i64 - 1, p as i64 - 1) * if (i - p).is_multiple_of(2) { 1 } else { -1 };
                hat_e(i, k, Variant::Plain).scale(&c)
            })
            .sum(),
    })
}

/// Index vectors `(p_1, …, p_{n-1})` with `0 ≤ p_i ≤ i`.
pub fn elementary_indices(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 1..n {
        out = out.into_iter().flat_map(|v| (0..=i).map(move |p| [v.clone(), vec![p]].concat())).collect();
    }
    out
}

/// Which family replaces the classical elementary monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantumFamily {
    E,
    HatE,
    F,
    G,
}

fn quantum_factor(fam: QuantumFamily, p: usize, k: usize) -> Polynomial {
    match fam {
        QuantumFamily::E => quantum_e(p, k),
        QuantumFamily::HatE => hat_e(p, k, Variant::Plain),
        QuantumFamily::F => f_quantum(p, k, Variant::Plain),
        QuantumFamily::G => g_quantum(p, k, Variant::Plain),
    }
}

static QMONOMIALS: Memo<(QuantumFamily, Vec<usize>), Polynomial> = Memo::new();

/// `∏_k Fam_{p_k}^k`, e.g. `Ê_{p_1 … p_{n-1}}`.
pub fn quantum_monomial(fam: QuantumFamily, ps: &[usize]) -> Polynomial {
    let mut ps = ps.to_vec();
    while ps.last() == Some(&0) {
        ps.pop();
    }
    QMONOMIALS.get_or_insert_with(&(fam, ps.clone()), || {
        ps.iter().enumerate().filter(|(_, &p)| p > 0).fold(Polynomial::one(), |acc, (i, &p)| acc * quantum_factor(fam, p, i + 1))
    })
}

/// Inverse of the transition matrix from standard elementary monomials to Schubert polynomials of `S_n`.
struct Transition {
    indices: Vec<Vec<usize>>,
    /// `𝔖_w = Σ_j c_j e_{indices[j]}`.
    schubert_in_e: BTreeMap<Permutation, Vec<(usize, BigInt)>>,
}

static TRANSITIONS: Memo<usize, Arc<Transition>> = Memo::new();

fn transition(n: usize) -> Arc<Transition> {
    TRANSITIONS.get_or_insert_with(&n, || {
        let indices = elementary_indices(n);
        let perms = Permutation::all(n);
        let col: BTreeMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let size = indices.len();
        let mut m = vec![vec![BigRational::zero(); size]; size];
        for (r, ps) in indices.iter().enumerate() {
            for (c, w) in expand_schubert(&elem_monomial(ps, ElemKind::E)).entries {
                m[r][col[&w]] = BigRational::from_integer(c.constant_term());
            }
        }
        let inv = invert(m);
        let mut schubert_in_e = BTreeMap::new();
        for (wi, w) in perms.iter().enumerate() {
            let row: Vec<(usize, BigInt)> = (0..size)
                .filter(|&j| !inv[wi][j].is_zero())
                .map(|j| {
                    assert!(inv[wi][j].is_integer(), "transition matrix is not unimodular");
                    (j, inv[wi][j].to_integer())
                })
                .collect();
            schubert_in_e.insert(w.clone(), row);
        }
        Arc::new(Transition { indices, schubert_in_e })
    })
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("transition matrix is singular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                if !inv[col][j].is_zero() {
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}

/// Checks membership in `ℤ[q] ⊗ L_n`: `x_i` exponents at most `n - i`, no `y`.
pub fn check_in_ln(f: &Polynomial, n: usize) -> Result<()> {
    for (m, _) in f.terms() {
        if !m.y_exps().is_empty() {
            return Err(Error::UnexpectedVariable(m.to_string()));
        }
        let bad = m.x_exps().iter().enumerate().any(|(i, &a)| i + 1 >= n && a > 0 || (a as usize) > n.saturating_sub(i + 1));
        if bad {
            return Err(Error::NotInLn { n, monomial: m.to_string() });
        }
    }
    Ok(())
}

/// Coefficients `c_p(q)` with `f = Σ_p c_p e_{p_1 … p_{n-1}}`.
pub fn expand_in_e(f: &Polynomial, n: usize) -> Result<BTreeMap<Vec<usize>, Polynomial>> {
    check_in_ln(f, n)?;
    let t = transition(n);
    let mut out: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
    for (c, w) in expand_schubert(f).entries {
        for (j, a) in &t.schubert_in_e[&w] {
            *out.entry(t.indices[*j].clone()).or_default() += &c.scale(a);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Coefficients `c_p(q)` with `f = Σ_p c_p g_{p_1 … p_{n-1}}`, peeling lowest x-degree parts.
pub fn expand_in_g(f: &Polynomial, n: usize) -> Result<BTreeMap<Vec<usize>, Polynomial>> {
    check_in_ln(f, n)?;
    let mut rem = f.clone();
    let mut out: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
    while !rem.is_zero() {
        let low = rem.lowest_in_family(Family::X);
        for (ps, c) in expand_in_e(&low, n)? {
            rem -= &c * &elem_monomial(&ps, ElemKind::G);
            *out.entry(ps).or_default() += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn substitute_family(coeffs: &BTreeMap<Vec<usize>, Polynomial>, fam: QuantumFamily) -> Polynomial {
    coeffs.iter().map(|(ps, c)| c * &quantum_monomial(fam, ps)).sum()
}

/// Quantization `Q`: `e_{p_1 … p_{n-1}} ↦ E_{p_1 … p_{n-1}}`, extended `ℤ[q]`-linearly.
pub fn quantize_cohomology(f: &Polynomial, n: usize) -> Result<Polynomial> {
    Ok(substitute_family(&expand_in_e(f, n)?, QuantumFamily::E))
}

/// Basis used to evaluate the K-theoretic quantization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// `e_p ↦ Ê_p`.
    E,
    /// `f_p ↦ F_p`.
    F,
    /// `g_p ↦ G_p`.
    G,
}

/// Quantization `Q̂`: `e_{p_1 … p_{n-1}} ↦ Ê_{p_1 … p_{n-1}}`, evaluated through the chosen basis.
pub fn quantize_k(f: &Polynomial, n: usize, route: Route) -> Result<Polynomial> {
    match route {
        Route::E => Ok(substitute_family(&expand_in_e(f, n)?, QuantumFamily::HatE)),
        Route::F => {
            check_in_ln(f, n)?;
            let flip = (1..n).map(|i| (Var::x(i), Polynomial::one_minus(Var::x(i)))).collect();
            Ok(substitute_family(&expand_in_e(&f.substitute(&flip), n)?, QuantumFamily::F))
        }
        Route::G => Ok(substitute_family(&expand_in_g(f, n)?, QuantumFamily::G)),
    }
}

static QUANTUM: Memo<(bool, Permutation), Polynomial> = Memo::new();

/// Quantum Schubert polynomial `𝔖_w^q = Q(𝔖_w)`.
pub fn quantum_schubert(w: &Permutation) -> Polynomial {
    QUANTUM.get_or_insert_with(&(false, w.clone()), || {
        quantize_cohomology(&schubert(w), w.size()).expect("Schubert polynomials of S_n lie in L_n")
    })
}

/// Quantum Grothendieck polynomial `𝔊_w^q = Q̂(𝔊_w)`.
pub fn quantum_grothendieck(w: &Permutation) -> Polynomial {
    QUANTUM.get_or_insert_with(&(true, w.clone()), || {
        quantize_k(&grothendieck(w), w.size(), Route::E).expect("Grothendieck polynomials of S_n lie in L_n")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Quantum cohomology: `E_1^n, …, E_n^n`.
    QH,
    /// Quantum K-theory: `Ē_1^n, …, Ē_n^n`.
    QK,
}

pub fn ideal_generators(n: usize, ring: Ring) -> Vec<Polynomial> {
    (1..=n)
        .map(|i| match ring {
            Ring::QH => quantum_e(i, n),
            Ring::QK => hat_e(i, n, Variant::Bar),
        })
        .collect()
}
