use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exps = SmallVec<[u32; 6]>;

/// One of the three variable alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Q,
    Y,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Q => "q",
            Family::Y => "y",
        }
    }

    /// Weight of a variable of this family in the grading.
    pub fn weight(self) -> u64 {
        match self {
            Family::Q => 2,
            Family::X | Family::Y => 1,
        }
    }
}

/// A single variable `x_i`, `q_i` or `y_i`, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn x(index: usize) -> Self {
        Var { family: Family::X, index }
    }

    pub fn q(index: usize) -> Self {
        Var { family: Family::Q, index }
    }

    pub fn y(index: usize) -> Self {
        Var { family: Family::Y, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.name(), self.index)
    }
}

/// Monomial in the three alphabets. Exponent vectors never carry trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Exps,
    q: Exps,
    y: Exps,
    deg: u64,
}

fn trim(v: &mut Exps) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Exps = long.iter().copied().collect();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.checked_add(*s).expect("exponent overflow");
    }
    out
}

impl Monomial {
    fn finish(mut self) -> Self {
        trim(&mut self.x);
        trim(&mut self.q);
        trim(&mut self.y);
        let sum = |v: &Exps| v.iter().map(|&e| e as u64).sum::<u64>();
        self.deg = sum(&self.x) + 2 * sum(&self.q) + sum(&self.y);
        self
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = Self::one();
        m.set_exp(v, e);
        m
    }

    /// Builds a monomial from (possibly untrimmed) exponent slices.
    pub fn from_exps(x: &[u32], q: &[u32], y: &[u32]) -> Self {
        Monomial { x: x.iter().copied().collect(), q: q.iter().copied().collect(), y: y.iter().copied().collect(), deg: 0 }
            .finish()
    }

    pub fn x_exps(&self) -> &[u32] {
        &self.x
    }

    pub fn q_exps(&self) -> &[u32] {
        &self.q
    }

    pub fn y_exps(&self) -> &[u32] {
        &self.y
    }

    pub fn exps(&self, family: Family) -> &[u32] {
        match family {
            Family::X => &self.x,
            Family::Q => &self.q,
            Family::Y => &self.y,
        }
    }

    fn exps_mut(&mut self, family: Family) -> &mut Exps {
        match family {
            Family::X => &mut self.x,
            Family::Q => &mut self.q,
            Family::Y => &mut self.y,
        }
    }

    pub fn exp(&self, v: Var) -> u32 {
        assert!(v.index >= 1, "variables are indexed from 1");
        self.exps(v.family).get(v.index - 1).copied().unwrap_or(0)
    }

    pub fn set_exp(&mut self, v: Var, e: u32) {
        assert!(v.index >= 1, "variables are indexed from 1");
        let exps = self.exps_mut(v.family);
        if exps.len() < v.index {
            if e == 0 {
                return;
            }
            exps.resize(v.index, 0);
        }
        exps[v.index - 1] = e;
        *self = std::mem::take(self).finish();
    }

    pub fn is_one(&self) -> bool {
        self.x.is_empty() && self.q.is_empty() && self.y.is_empty()
    }

    pub fn family_degree(&self, family: Family) -> u64 {
        self.exps(family).iter().map(|&e| e as u64).sum()
    }

    /// Degree with `deg x_i = deg y_i = 1` and `deg q_i = 2`.
    pub fn graded_degree(&self) -> u64 {
        self.deg
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: add_exps(&self.x, &other.x),
            q: add_exps(&self.q, &other.q),
            y: add_exps(&self.y, &other.y),
            deg: self.deg + other.deg,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for fam in [Family::X, Family::Q, Family::Y] {
            let o = other.exps(fam);
            let s = out.exps_mut(fam);
            if o.len() > s.len() {
                return None;
            }
            for (a, b) in s.iter_mut().zip(o) {
                if *a < *b {
                    return None;
                }
                *a -= b;
            }
        }
        Some(out.finish())
    }

    /// The part of the monomial living in `family` only.
    pub fn restrict(&self, family: Family) -> Monomial {
        let mut m = Monomial::one();
        *m.exps_mut(family) = self.exps(family).iter().copied().collect();
        m.finish()
    }

    /// The monomial with `family` removed.
    pub fn without(&self, family: Family) -> Monomial {
        let mut m = self.clone();
        m.exps_mut(family).clear();
        m.finish()
    }

    pub fn with_family_exps(&self, family: Family, exps: &[u32]) -> Monomial {
        let mut m = self.clone();
        *m.exps_mut(family) = exps.iter().copied().collect();
        m.finish()
    }

    /// Variables with nonzero exponent, with their exponents.
    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        [Family::X, Family::Q, Family::Y].into_iter().flat_map(move |fam| {
            self.exps(fam)
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(move |(i, &e)| (Var { family: fam, index: i + 1 }, e))
        })
    }

    pub fn swap_families(&self, a: Family, b: Family) -> Monomial {
        let mut m = self.clone();
        let ea: Exps = self.exps(a).iter().copied().collect();
        let eb: Exps = self.exps(b).iter().copied().collect();
        *m.exps_mut(a) = eb;
        *m.exps_mut(b) = ea;
        m.finish()
    }
}

impl Ord for Monomial {
    /// Graded degree first, then x-lex, q-lex, y-lex.
    fn cmp(&self, other: &Self) -> Ordering {
        self.graded_degree()
            .cmp(&other.graded_degree())
            .then_with(|| self.x.as_slice().cmp(other.x.as_slice()))
            .then_with(|| self.q.as_slice().cmp(other.q.as_slice()))
            .then_with(|| self.y.as_slice().cmp(other.y.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
