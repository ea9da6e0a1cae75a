use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Family, Monomial, Var};
use crate::error::{Error, Result};

/// Sparse polynomial with integer coefficients in the x, q and y alphabets.
///
/// Terms are kept in the canonical monomial order and zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn x(i: usize) -> Self {
        Self::var(Var::x(i))
    }

    pub fn q(i: usize) -> Self {
        Self::var(Var::q(i))
    }

    pub fn y(i: usize) -> Self {
        Self::var(Var::y(i))
    }

    /// `1 - v`.
    pub fn one_minus(v: Var) -> Self {
        Self::one() - Self::var(v)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Largest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::graded_degree).max()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().next().map(Monomial::graded_degree)
    }

    /// Degree of the polynomial in a single variable.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Largest index of a variable of `family` occurring in the polynomial.
    pub fn max_index(&self, family: Family) -> usize {
        self.terms.keys().map(|m| m.exps(family).len()).max().unwrap_or(0)
    }

    pub fn involves(&self, family: Family) -> bool {
        self.max_index(family) > 0
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Polynomial>>(factors: I) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    /// Simultaneous substitution of the bound variables.
    pub fn substitute(&self, bindings: &HashMap<Var, Polynomial>) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut factor = Self::constant(c.clone());
            for (v, e) in m.vars() {
                if let Some(target) = bindings.get(&v) {
                    rest.set_exp(v, 0);
                    let p = powers.entry((v, e)).or_insert_with(|| target.pow(e));
                    factor = &factor * &*p;
                    if factor.is_zero() {
                        break;
                    }
                }
            }
            for (n, d) in factor.terms {
                out.add_term(n.mul(&rest), d);
            }
        }
        out
    }

    /// Sets every variable satisfying `pred` to zero.
    pub fn set_zero(&self, pred: impl Fn(Var) -> bool) -> Self {
        Polynomial { terms: self.terms.iter().filter(|(m, _)| !m.vars().any(|(v, _)| pred(v))).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Specialization of all quantum parameters to zero.
    pub fn q_to_zero(&self) -> Self {
        self.set_zero(|v| v.family == Family::Q)
    }

    /// Exchanges the roles of two variable families.
    pub fn swap_families(&self, a: Family, b: Family) -> Self {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.swap_families(a, b), c.clone())).collect() }
    }

    /// Exchanges `x_i` and `x_{i+1}` (or the same indices in another family).
    pub fn swap_adjacent(&self, family: Family, i: usize) -> Self {
        let a = Var { family, index: i };
        let b = Var { family, index: i + 1 };
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut n = m.clone();
            let (ea, eb) = (m.exp(a), m.exp(b));
            n.set_exp(a, eb);
            n.set_exp(b, ea);
            (n, c.clone())
        }))
    }

    /// Homogeneous components for the grading `deg x = deg y = 1`, `deg q = 2`, ascending.
    pub fn graded_components(&self) -> Vec<(u64, Polynomial)> {
        let mut out: Vec<(u64, Polynomial)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.graded_degree();
            match out.last_mut() {
                Some((last, p)) if *last == d => {
                    p.terms.insert(m.clone(), c.clone());
                }
                _ => out.push((d, Polynomial::term(c.clone(), m.clone()))),
            }
        }
        out
    }

    pub fn lowest_component(&self) -> Polynomial {
        self.graded_components().into_iter().next().map(|(_, p)| p).unwrap_or_default()
    }

    /// Terms of minimal total degree in the given family.
    pub fn lowest_in_family(&self, family: Family) -> Polynomial {
        let Some(min) = self.terms.keys().map(|m| m.family_degree(family)).min() else {
            return Self::zero();
        };
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| m.family_degree(family) == min).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Monomial with lexicographically smallest x-exponent vector, for q- and y-free input.
    pub fn lex_min_x_monomial(&self) -> Result<(Monomial, BigInt)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| !m.q_exps().is_empty() || !m.y_exps().is_empty()) {
            return Err(Error::UnexpectedVariable(m.to_string()));
        }
        let (m, c) = self.terms.iter().min_by(|a, b| lex_cmp(a.0.x_exps(), b.0.x_exps())).expect("nonempty");
        Ok((m.clone(), c.clone()))
    }

    /// Groups terms by their monomial in `keep`, returning coefficients in the other families.
    pub fn collect_by(&self, keep: &[Family]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = Monomial::one();
            let mut rest = m.clone();
            for &f in keep {
                key = key.mul(&m.restrict(f));
                rest = rest.without(f);
            }
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, by division on leading terms in the canonical order.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        let (lm, lc) = d.leading_term().ok_or(Error::NotDivisible)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or(Error::NotDivisible)?;
            if !(c % &lc).is_zero() {
                return Err(Error::NotDivisible);
            }
            let qc = c / &lc;
            rem -= &d.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Coefficients `c_a` with `self = Σ_a c_a ∏_{i≤k} (1 - x_i)^{a_i}`.
    ///
    /// Keys are trimmed exponent vectors; coefficients carry the non-x part.
    pub fn shifted_expand(&self, k: usize) -> Result<BTreeMap<Vec<u32>, Polynomial>> {
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| m.x_exps().len() > k) {
            return Err(Error::UnexpectedVariable(m.to_string()));
        }
        let flip: HashMap<Var, Polynomial> = (1..=k).map(|i| (Var::x(i), Polynomial::one_minus(Var::x(i)))).collect();
        let shifted = self.substitute(&flip);
        let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in shifted.terms {
            out.entry(m.x_exps().to_vec()).or_default().add_term(m.without(Family::X), c);
        }
        Ok(out)
    }

    /// Inverse of [`Polynomial::shifted_expand`].
    pub fn from_shifted(parts: &BTreeMap<Vec<u32>, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, c) in parts {
            let mut f = c.clone();
            for (i, &e) in a.iter().enumerate() {
                f = &f * &Polynomial::one_minus(Var::x(i + 1)).pow(e);
            }
            out += &f;
        }
        out
    }

    /// Coefficient of the given x-monomial when the polynomial is viewed over the other families.
    pub fn x_coefficient(&self, xm: &[u32]) -> Polynomial {
        let target = Monomial::from_exps(xm, &[], &[]);
        Polynomial::from_terms(
            self.terms.iter().filter(|(m, _)| m.restrict(Family::X) == target).map(|(m, c)| (m.without(Family::X), c.clone())),
        )
    }
}

/// Lexicographic comparison of trimmed exponent vectors, padding with zeros.
pub fn lex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.cmp(b)
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        if small.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                *acc.entry(m.mul(n)).or_default() += c * d;
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::x(i)
    }
    fn q(i: usize) -> Polynomial {
        Polynomial::q(i)
    }
    fn one() -> Polynomial {
        Polynomial::one()
    }

    #[test]
    fn distributivity_example() {
        let lhs = (one() - x(1)) * (one() - x(2));
        let rhs = one() - x(1) - x(2) + x(1) * x(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_of_g213() {
        let g = (one() - q(1)) * x(1) + q(1);
        let expect = (one() - q(1)).pow(2) * x(1).pow(2) + Polynomial::constant(2) * q(1) * (one() - q(1)) * x(1) + q(1).pow(2);
        assert_eq!(&g * &g, expect);
        assert_eq!(&g + &Polynomial::zero(), g);
    }

    #[test]
    fn substitute_examples() {
        let g231 = (one() - q(2)) * x(1) * x(2) - (q(1) - q(2)) * x(1) + q(1);
        assert_eq!(g231.q_to_zero(), x(1) * x(2));
        let b: HashMap<Var, Polynomial> = [(Var::q(1), Polynomial::zero()), (Var::q(2), Polynomial::zero())].into();
        assert_eq!(g231.substitute(&b), x(1) * x(2));

        let f = x(1) + Polynomial::y(1);
        let swapped = f.swap_families(Family::X, Family::Y);
        assert_eq!(swapped.set_zero(|v| v.family == Family::Y), x(1));
        assert_eq!(f.substitute(&HashMap::new()), f);
    }

    #[test]
    fn simultaneous_substitution() {
        let f = x(1) - x(2);
        let b: HashMap<Var, Polynomial> = [(Var::x(1), x(2)), (Var::x(2), x(1))].into();
        assert_eq!(f.substitute(&b), x(2) - x(1));
    }

    #[test]
    fn graded_components_examples() {
        let g = (one() - q(1)) * x(1) + q(1);
        let comps = g.graded_components();
        assert_eq!(comps, vec![(1, x(1)), (2, q(1)), (3, -(q(1) * x(1)))]);
        assert_eq!(g.lowest_component(), x(1));
        let e22 = x(1) * x(2) + q(1);
        assert_eq!(e22.graded_components(), vec![(2, e22.clone())]);
        assert!(Polynomial::zero().graded_components().is_empty());
    }

    #[test]
    fn lex_min_examples() {
        let (m, c) = (x(1) + x(2)).lex_min_x_monomial().unwrap();
        assert_eq!((m.x_exps(), c), (&[0, 1][..], BigInt::from(1)));
        let (m, _) = (x(1).pow(2) * x(2)).lex_min_x_monomial().unwrap();
        assert_eq!(m.x_exps(), &[2, 1]);
        let f = Polynomial::constant(3) * x(1).pow(2) + x(1) * x(2);
        let (m, c) = f.lex_min_x_monomial().unwrap();
        assert_eq!((m.x_exps(), c), (&[1, 1][..], BigInt::from(1)));
        assert_eq!(Polynomial::zero().lex_min_x_monomial(), Err(Error::ZeroPolynomial));
        assert!(matches!((x(1) + q(1)).lex_min_x_monomial(), Err(Error::UnexpectedVariable(_))));
    }

    #[test]
    fn exact_div_examples() {
        let d = one() - q(1);
        assert_eq!(((one() - q(1)) * x(1)).exact_div(&d), Ok(x(1)));
        let d2 = one() - q(2);
        let f = (one() - x(1)) * (one() - x(2)) * &d2;
        assert_eq!(f.exact_div(&d2), Ok((one() - x(1)) * (one() - x(2))));
        assert_eq!((x(1) + q(1)).exact_div(&d), Err(Error::NotDivisible));
        assert_eq!((Polynomial::constant(3) * x(1)).exact_div(&Polynomial::constant(2)), Err(Error::NotDivisible));
        assert_eq!(x(1).exact_div(&Polynomial::zero()), Err(Error::NotDivisible));
    }

    #[test]
    fn shifted_expand_examples() {
        let s = x(1).shifted_expand(1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[&vec![]], one());
        assert_eq!(s[&vec![1]], -one());

        let g12 = one() - (one() - x(1)) * (one() - x(2)) * (one() - q(2));
        let s = g12.shifted_expand(2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[&vec![]], one());
        assert_eq!(s[&vec![1, 1]], -(one() - q(2)));
        assert_eq!(Polynomial::from_shifted(&s), g12);

        let c = Polynomial::constant(7);
        assert_eq!(c.shifted_expand(3).unwrap()[&vec![]], c);
        assert!(x(3).shifted_expand(2).is_err());
    }

    #[test]
    fn pow_and_degree() {
        let f = one() + x(1);
        assert_eq!(f.pow(0), one());
        assert_eq!(f.pow(3).num_terms(), 4);
        assert_eq!((q(1) * x(2)).max_degree(), Some(3));
        assert_eq!(f.degree_in(Var::x(1)), 1);
    }
}
