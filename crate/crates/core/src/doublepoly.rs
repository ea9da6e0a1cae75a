//! Double, quantum double Schubert and quantum double Grothendieck polynomials, the Cauchy
//! identities, and recovery of single polynomials from double ones.
//!
//! Operators act on the `x` family only; `y` and `q` are constants for them.

use serde::{Deserialize, Serialize};

use crate::classical::{apply_word, dual_grothendieck, grothendieck, schubert, OperatorKind};
use crate::exactpoly::{Family, Polynomial, Var};
use crate::memo::Memo;
use crate::permgroup::Permutation;
use crate::quantumbasis::{f_quantum, quantum_e, quantum_grothendieck, quantum_schubert, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Grothendieck,
    QSchubert,
    QGrothendieck,
}

static DOUBLES: Memo<(Kind, Permutation, usize), Polynomial> = Memo::new();

fn in_y(f: &Polynomial) -> Polynomial {
    f.swap_families(Family::X, Family::Y)
}

fn top(kind: Kind, n: usize) -> Polynomial {
    let mut out = Polynomial::one();
    match kind {
        Kind::Grothendieck => {
            for i in 1..n {
                for j in 1..=n - i {
                    let (x, y) = (Polynomial::x(i), Polynomial::y(j));
                    out = out * (&x + &y - &x * &y);
                }
            }
        }
        Kind::QSchubert => {
            for i in 1..n {
                let factor: Polynomial = (0..=i).map(|j| Polynomial::x(n - i).pow((i - j) as u32) * in_y(&quantum_e(j, i))).sum();
                out = out * factor;
            }
        }
        Kind::QGrothendieck => {
            for i in 1..n {
                let one_minus = Polynomial::one_minus(Var::x(n - i));
                let mut factor = Polynomial::one();
                for j in 1..=i {
                    let term = one_minus.pow(j as u32) * in_y(&f_quantum(j, i, Variant::Plain));
                    factor = if j % 2 == 0 { factor + term } else { factor - term };
                }
                out = out * factor;
            }
        }
    }
    out
}

fn double(kind: Kind, w: &Permutation, n: usize) -> Polynomial {
    assert!(w.size() <= n, "{w} is not in S_{n}");
    DOUBLES.get_or_insert_with(&(kind, w.clone(), n), || {
        let op = match kind {
            Kind::QSchubert => OperatorKind::Partial,
            Kind::Grothendieck | Kind::QGrothendieck => OperatorKind::Pi,
        };
        let u = w.inverse().compose(&Permutation::longest(n));
        apply_word(&u, &top(kind, n), op, Family::X)
    })
}

/// Double Grothendieck polynomial `𝔊_w(x,y) = π^{(x)}_{w⁻¹w∘} ∏_{i+j≤n}(x_i + y_j - x_i y_j)`.
pub fn double_grothendieck(w: &Permutation, n: usize) -> Polynomial {
    double(Kind::Grothendieck, w, n)
}

/// Quantum double Schubert polynomial `𝔖ᵠ_w(x,y)`.
pub fn qd_schubert(w: &Permutation, n: usize) -> Polynomial {
    double(Kind::QSchubert, w, n)
}

/// Quantum double Grothendieck polynomial `𝔊ᵠ_w(x,y)`.
pub fn qd_grothendieck(w: &Permutation, n: usize) -> Polynomial {
    double(Kind::QGrothendieck, w, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyKind {
    GrothendieckClassical,
    QSchubert,
    QGrothendieck,
}

/// Both sides of the Cauchy identity for `S_n`: the top double polynomial, and the sum over `w`
/// of the dual (or Schubert) polynomial in `x` times the polynomial of `w w∘` in `y`.
pub fn cauchy_sides(n: usize, kind: CauchyKind) -> (Polynomial, Polynomial) {
    let w0 = Permutation::longest(n);
    let term = |w: &Permutation| {
        let ww0 = w.compose(&w0);
        match kind {
            CauchyKind::GrothendieckClassical => dual_grothendieck(w, n) * in_y(&grothendieck(&ww0)),
            CauchyKind::QSchubert => schubert(w) * in_y(&quantum_schubert(&ww0)),
            CauchyKind::QGrothendieck => dual_grothendieck(w, n) * in_y(&quantum_grothendieck(&ww0)),
        }
    };
    let rhs = Permutation::all(n).iter().map(term).sum();
    let lhs = match kind {
        CauchyKind::GrothendieckClassical => double_grothendieck(&w0, n),
        CauchyKind::QSchubert => qd_schubert(&w0, n),
        CauchyKind::QGrothendieck => qd_grothendieck(&w0, n),
    };
    (lhs, rhs)
}

pub fn cauchy_check(n: usize, kind: CauchyKind) -> bool {
    let (lhs, rhs) = cauchy_sides(n, kind);
    lhs == rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoverKind {
    Schubert,
    Grothendieck,
}

/// `𝔛ᵠ_{w⁻¹}(y,x)|_{y=0}`, which equals `𝔛ᵠ_w`.
pub fn recover_qpoly(w: &Permutation, n: usize, kind: RecoverKind) -> Polynomial {
    let wi = w.inverse();
    let d = match kind {
        RecoverKind::Schubert => qd_schubert(&wi, n),
        RecoverKind::Grothendieck => qd_grothendieck(&wi, n),
    };
    d.swap_families(Family::X, Family::Y).set_zero(|v| v.family == Family::Y)
}

/// Whether `recover_qpoly` agrees with the direct construction.
pub fn recovery_check(w: &Permutation, n: usize, kind: RecoverKind) -> bool {
    let direct = match kind {
        RecoverKind::Schubert => quantum_schubert(w),
        RecoverKind::Grothendieck => quantum_grothendieck(w),
    };
    recover_qpoly(w, n, kind) == direct
}

/// Whether `π_w(𝔊_v) = 1`, which holds exactly when `v ≤ w`.
pub fn pi_indicator(w: &Permutation, v: &Permutation) -> bool {
    apply_word(w, &grothendieck(v), OperatorKind::Pi, Family::X).is_one()
}
