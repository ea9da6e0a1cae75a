//! Independent oracles for the quantum elementary families: the Givental-Kim determinant and the
//! recurrences, checked against the defining sums computed by the library.

use qgroth::classical::binomial;
use qgroth::quantumbasis::{f_quantum, g_quantum, hat_e, quantum_e, Variant};
use qgroth::{Family, Permutation, Polynomial, Var};

pub fn q(i: i64) -> Polynomial {
    if i <= 0 {
        Polynomial::zero()
    } else {
        Polynomial::q(i as usize)
    }
}

/// `1 - x_i`, and zero for `i ≤ 0`.
pub fn one_minus_x(i: i64) -> Polynomial {
    if i <= 0 {
        Polynomial::zero()
    } else {
        Polynomial::one_minus(Var::x(i as usize))
    }
}

/// Family value with the convention that it vanishes outside `0 ≤ p ≤ k`.
fn fam(f: fn(usize, usize, Variant) -> Polynomial, p: i64, k: i64, v: Variant) -> Polynomial {
    if p < 0 || k < 0 || p > k {
        Polynomial::zero()
    } else {
        f(p as usize, k as usize, v)
    }
}

pub fn f_plain(p: i64, k: i64) -> Polynomial {
    fam(f_quantum, p, k, Variant::Plain)
}
pub fn f_bar(p: i64, k: i64) -> Polynomial {
    fam(f_quantum, p, k, Variant::Bar)
}
pub fn f_tilde(p: i64, k: i64) -> Polynomial {
    fam(f_quantum, p, k, Variant::Tilde)
}
pub fn e_hat(p: i64, k: i64) -> Polynomial {
    fam(hat_e, p, k, Variant::Plain)
}
pub fn e_bar(p: i64, k: i64) -> Polynomial {
    fam(hat_e, p, k, Variant::Bar)
}
pub fn g_plain(p: i64, k: i64) -> Polynomial {
    fam(g_quantum, p, k, Variant::Plain)
}
pub fn g_bar(p: i64, k: i64) -> Polynomial {
    fam(g_quantum, p, k, Variant::Bar)
}

/// Coefficient of `λ^p` in `det(1 + λΓ_k)`, by the Leibniz formula with `λ` stored as `y_1`.
pub fn givental_kim(p: usize, k: usize) -> Polynomial {
    let lambda = Polynomial::y(1);
    let entry = |i: usize, j: usize| -> Polynomial {
        let gamma = if i == j {
            Polynomial::x(i)
        } else if j == i + 1 {
            Polynomial::q(i)
        } else if i == j + 1 {
            Polynomial::constant(-1)
        } else {
            Polynomial::zero()
        };
        let unit = if i == j { Polynomial::one() } else { Polynomial::zero() };
        unit + &lambda * &gamma
    };
    let det: Polynomial = Permutation::all(k)
        .iter()
        .map(|s| {
            let word = s.word_n(k);
            let term = (1..=k).fold(Polynomial::one(), |acc, i| acc * entry(i, word[i - 1]));
            if s.length() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    Polynomial::from_terms(det.terms().filter(|(m, _)| m.exp(Var::y(1)) == p as u32).map(|(m, c)| (m.without(Family::Y), c.clone())))
}

/// `(1-x_1)⋯(1-x_k) F̃(1/(1-x_1), …)` for a square-free `F̃`: each `x_S` becomes `∏_{i∉S}(1-x_i)`.
pub fn reciprocal_substitution(f: &Polynomial, k: usize) -> Polynomial {
    f.terms()
        .map(|(m, c)| {
            assert!(m.x_exps().iter().all(|&e| e <= 1));
            let rest = (1..=k).filter(|&i| m.exp(Var::x(i)) == 0).fold(Polynomial::one(), |acc, i| acc * Polynomial::one_minus(Var::x(i)));
            Polynomial::term(c.clone(), m.without(Family::X)) * rest
        })
        .sum()
}

/// Every recurrence and inversion formula for `E`, `F`, `F̃`, `F̄`, `Ê`, `Ē`, `G`, `Ḡ` with
/// `p ≤ k ≤ kmax`, returning a description of each mismatch.
pub fn recurrence_failures(kmax: i64) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            out.push(what);
        }
    };
    for k in 1..=kmax {
        let xk = Polynomial::x(k as usize);
        for p in 0..=k {
            if k <= 4 {
                check(quantum_e(p as usize, k as usize) == givental_kim(p as usize, k as usize), format!("E_{p}^{k} determinant"));
            }
            check(f_plain(p, k) == f_bar(p, k) - q(k) * one_minus_x(k) * f_bar(p - 1, k - 1), format!("F_{p}^{k}"));
            check(
                f_bar(p, k) == reciprocal_substitution(&f_tilde(k - p, k), k as usize),
                format!("F̄_{p}^{k} substitution"),
            );
            let mobius: Polynomial =
                (0..=p).map(|i| e_hat(i, k).scale(&(binomial(k - i, p - i) * if i % 2 == 0 { 1 } else { -1 }))).sum();
            check(f_plain(p, k) == mobius, format!("F_{p}^{k} inversion"));
            check(e_hat(p, k) == e_bar(p, k) + q(k) * one_minus_x(k) * e_bar(p - 1, k - 1), format!("Ê_{p}^{k}"));
            if p == 0 {
                continue;
            }
            let tilde = f_tilde(p, k - 1) + xk.clone() * f_tilde(p - 1, k - 1) - q(k - 1) * xk.clone() * f_tilde(p - 1, k - 2);
            check(f_tilde(p, k) == tilde, format!("F̃_{p}^{k}"));
            let bar = f_bar(p, k - 1) + one_minus_x(k) * f_bar(p - 1, k - 1) - q(k - 1) * one_minus_x(k - 1) * f_bar(p - 1, k - 2);
            check(f_bar(p, k) == bar, format!("F̄_{p}^{k}"));
            let bar = e_bar(p, k - 1)
                + xk.clone() * e_bar(p - 1, k - 1)
                + q(k - 1) * one_minus_x(k - 1) * (e_bar(p - 1, k - 2) + e_bar(p - 2, k - 2));
            check(e_bar(p, k) == bar, format!("Ē_{p}^{k}"));
            let r1 = g_bar(p, k) - q(k) * one_minus_x(k) * (g_bar(p, k - 1) - g_bar(p - 1, k - 1));
            check(g_plain(p, k) == r1, format!("G_{p}^{k} first"));
            // At p = 1 the q-term drops out; kept as printed it would add -q_{k-1}(1-x_{k-1}).
            let tail = if p == 1 { Polynomial::zero() } else { g_bar(p - 1, k - 2) - g_bar(p - 2, k - 2) };
            let r2 = one_minus_x(k) * g_bar(p, k - 1) + xk.clone() * g_bar(p - 1, k - 1) - q(k - 1) * one_minus_x(k - 1) * tail;
            check(g_bar(p, k) == r2, format!("Ḡ_{p}^{k} second"));
            let r3 = Polynomial::one_minus(Var::q(k as usize)) * one_minus_x(k) * (g_bar(p, k - 1) - g_bar(p - 1, k - 1));
            check(g_plain(p, k) - g_plain(p - 1, k - 1) == r3, format!("G_{p}^{k} third"));
        }
    }
    out
}
