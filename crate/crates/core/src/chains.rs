//! Pieri chains and their markings, Monk-type path sums, and the quantum Bruhat representation
//! of the quantum quadratic algebra together with its multiplicative Dunkl elements.
//!
//! Operator words act on the group algebra with the leftmost factor applied first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::{elem_family, elem_monomial, expand_grothendieck, grothendieck, Basis, ElemKind, Expansion};
use crate::error::{Error, Result};
use crate::exactpoly::{Family, Monomial, Polynomial, Var};
use crate::expand::expand_qgrothendieck;
use crate::memo::Memo;
use crate::permgroup::{Direction, Permutation};
use crate::quantumbasis::{elementary_indices, g_quantum, quantum_grothendieck, quantum_monomial, QuantumFamily, Variant};

/// `(a,b) ≺ (c,d)` iff `b > d`, or `b = d` and `a < c`.
pub fn precedes(x: (usize, usize), y: (usize, usize)) -> bool {
    x.1 > y.1 || (x.1 == y.1 && x.0 < y.0)
}

/// Whether appending `next` to a chain with `labels` keeps conditions (P1) and (P2).
pub fn extends_pieri(labels: &[(usize, usize)], next: (usize, usize)) -> bool {
    let Some(&last) = labels.last() else {
        return true;
    };
    if next.1 > last.1 {
        return false;
    }
    let i = labels.len() - 1;
    if i >= 1 && labels[..i].iter().any(|l| l.0 == last.0) {
        return precedes(last, next);
    }
    true
}

/// (P1) and (P2) for a whole label sequence.
pub fn is_pieri(labels: &[(usize, usize)]) -> bool {
    (1..labels.len()).all(|i| extends_pieri(&labels[..i], labels[i]))
}

/// A path in the quantum Bruhat graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRecord {
    pub start: Permutation,
    pub labels: Vec<(usize, usize)>,
    /// `w_1, …, w_s`.
    pub perms: Vec<Permutation>,
    pub directions: Vec<Direction>,
    pub qweight: Monomial,
}

impl ChainRecord {
    pub fn empty(start: Permutation) -> Self {
        ChainRecord { start, labels: Vec::new(), perms: Vec::new(), directions: Vec::new(), qweight: Monomial::one() }
    }

    /// Replays `labels` from `start`, failing if some step is not an edge.
    pub fn from_labels(start: Permutation, labels: &[(usize, usize)]) -> Result<Self> {
        let mut rec = ChainRecord::empty(start);
        for &(a, b) in labels {
            if !rec.push(a, b) {
                return Err(Error::HypothesisViolation(format!("({a},{b}) is not an edge out of {}", rec.end())));
            }
        }
        Ok(rec)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn end(&self) -> &Permutation {
        self.perms.last().unwrap_or(&self.start)
    }

    pub fn is_classical(&self) -> bool {
        self.directions.iter().all(|&d| d == Direction::Up)
    }

    /// Appends the edge labeled `(a,b)`, `a < b`, if it exists.
    pub fn push(&mut self, a: usize, b: usize) -> bool {
        if a == 0 || a >= b {
            return false;
        }
        let Some(e) = self.end().quantum_edge(a, b) else {
            return false;
        };
        self.labels.push((a, b));
        self.perms.push(e.to);
        self.directions.push(e.direction);
        self.qweight = self.qweight.mul(&e.weight);
        true
    }

    pub fn pop(&mut self) {
        if self.labels.pop().is_some() {
            self.perms.pop();
            self.directions.pop();
            self.qweight = Monomial::one();
            for w in self.weights() {
                self.qweight = self.qweight.mul(&w);
            }
        }
    }

    fn weights(&self) -> Vec<Monomial> {
        self.labels
            .iter()
            .zip(&self.directions)
            .map(|(&(a, b), d)| match d {
                Direction::Up => Monomial::one(),
                Direction::Down => crate::permgroup::q_interval(a, b),
            })
            .collect()
    }
}

impl fmt::Display for ChainRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for ((a, b), w) in self.labels.iter().zip(&self.perms) {
            write!(f, " -({a},{b})-> {w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    start: Permutation,
    labels: Vec<(usize, usize)>,
    directions: Vec<Direction>,
    qweight: Vec<u32>,
}

impl Serialize for ChainRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainJson {
            start: self.start.clone(),
            labels: self.labels.clone(),
            directions: self.directions.clone(),
            qweight: self.qweight.q_exps().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainRecord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ChainJson::deserialize(d)?;
        let rec = ChainRecord::from_labels(j.start, &j.labels).map_err(D::Error::custom)?;
        if rec.directions != j.directions || rec.qweight.q_exps() != j.qweight.as_slice() {
            return Err(D::Error::custom("directions or qweight inconsistent with labels"));
        }
        Ok(rec)
    }
}

/// Number of `p`-markings of a chain and the signed counts `m_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingCount {
    pub counts: BTreeMap<usize, u64>,
    pub m_values: BTreeMap<usize, i64>,
}

impl MarkingCount {
    pub fn m(&self, p: usize) -> i64 {
        self.m_values.get(&p).copied().unwrap_or(0)
    }
}

fn marking_ok(labels: &[(usize, usize)], marked: u64) -> bool {
    let s = labels.len();
    let is_marked = |i: usize| marked >> i & 1 == 1;
    for i in 0..s {
        let repeated = labels[..i].iter().any(|l| l.0 == labels[i].0);
        if is_marked(i) && repeated {
            return false;
        }
        if !is_marked(i) && i + 1 < s && !precedes(labels[i], labels[i + 1]) {
            return false;
        }
    }
    let mut r = 0;
    while r < s && (r == 0 || (labels[r].1 == labels[r - 1].1 && labels[r].0 < labels[r - 1].0)) {
        if !is_marked(r) {
            return false;
        }
        r += 1;
    }
    true
}

/// Counts as a product of a forced part and a free part.
fn marking_binomials(labels: &[(usize, usize)]) -> BTreeMap<usize, u64> {
    let s = labels.len();
    let mut forced = vec![false; s];
    let mut forbidden = vec![false; s];
    for i in 0..s {
        forbidden[i] = labels[..i].iter().any(|l| l.0 == labels[i].0);
        forced[i] = i + 1 < s && !precedes(labels[i], labels[i + 1]);
    }
    let mut r = 0;
    while r < s && (r == 0 || (labels[r].1 == labels[r - 1].1 && labels[r].0 < labels[r - 1].0)) {
        forced[r] = true;
        r += 1;
    }
    let mut out: BTreeMap<usize, u64> = (0..=s).map(|p| (p, 0)).collect();
    if (0..s).any(|i| forced[i] && forbidden[i]) {
        return out;
    }
    let nf = forced.iter().filter(|&&f| f).count();
    let free = (0..s).filter(|&i| !forced[i] && !forbidden[i]).count();
    for j in 0..=free {
        let c = crate::classical::binomial(free as i64, j as i64);
        out.insert(nf + j, u64::try_from(c).expect("small binomial"));
    }
    out
}

static CENSUS: Memo<Vec<(usize, usize)>, MarkingCount> = Memo::new();

/// Exhaustive census of the markings of a chain with the given labels.
pub fn marking_census(labels: &[(usize, usize)]) -> MarkingCount {
    assert!(labels.len() < 40, "chain too long for exhaustive marking census");
    CENSUS.get_or_insert_with(&labels.to_vec(), || {
        let s = labels.len();
        let mut counts: BTreeMap<usize, u64> = (0..=s).map(|p| (p, 0)).collect();
        for marked in 0..1u64 << s {
            if marking_ok(labels, marked) {
                *counts.get_mut(&(marked.count_ones() as usize)).expect("p ≤ s") += 1;
            }
        }
        assert_eq!(counts, marking_binomials(labels), "marking count is not a binomial coefficient for {labels:?}");
        let m_values = counts
            .iter()
            .map(|(&p, &c)| {
                let sign = if (s - p).is_multiple_of(2) { 1 } else { -1 };
                (p, sign * c as i64)
            })
            .collect();
        MarkingCount { counts, m_values }
    })
}

/// Runs an enumeration at widths `n0` and `n0 + 1` and insists on agreement.
fn adaptive<T: PartialEq + fmt::Debug>(n0: usize, f: impl Fn(usize) -> Result<T>) -> Result<T> {
    let a = f(n0)?;
    let b = f(n0 + 1)?;
    if a != b {
        return Err(Error::HypothesisViolation(format!("enumeration differs between S_{n0} and S_{}: {a:?} vs {b:?}", n0 + 1)));
    }
    Ok(a)
}

fn check_pk(p: usize, k: usize) -> Result<()> {
    if p == 0 || p > k {
        return Err(Error::IndexOutOfRange(format!("need 1 ≤ p ≤ k, got p={p}, k={k}")));
    }
    Ok(())
}

fn pieri_dfs(n: usize, k: usize, quantum: bool, rec: &mut ChainRecord, out: &mut Vec<ChainRecord>) -> Result<()> {
    if rec.len() > 4 * n * n {
        return Err(Error::IterationGuard(4 * n * n));
    }
    for e in rec.end().quantum_edges(Some(k), n) {
        if (!quantum && e.direction == Direction::Down) || !extends_pieri(&rec.labels, e.label) {
            continue;
        }
        rec.push(e.label.0, e.label.1);
        out.push(rec.clone());
        pieri_dfs(n, k, quantum, rec, out)?;
        rec.pop();
    }
    Ok(())
}

fn chains_in(w: &Permutation, k: usize, n: usize, quantum: bool) -> Result<Vec<ChainRecord>> {
    let mut out = Vec::new();
    pieri_dfs(n, k, quantum, &mut ChainRecord::empty(w.clone()), &mut out)?;
    Ok(out)
}

fn chains_with_census(w: &Permutation, k: usize, p: usize, quantum: bool) -> Result<Vec<(ChainRecord, MarkingCount)>> {
    check_pk(p, k)?;
    let chains = adaptive(w.size().max(k) + p + 1, |n| chains_in(w, k, n, quantum))?;
    Ok(chains.into_iter().map(|c| {
        let m = marking_census(&c.labels);
        (c, m)
    }).collect())
}

/// All nonempty `k`-Pieri chains starting at `w`, each with its marking census.
pub fn pieri_chains(w: &Permutation, k: usize, p: usize) -> Result<Vec<(ChainRecord, MarkingCount)>> {
    chains_with_census(w, k, p, false)
}

/// All nonempty quantum `k`-Pieri chains starting at `w`, each with its marking census.
pub fn quantum_pieri_chains(w: &Permutation, k: usize, p: usize) -> Result<Vec<(ChainRecord, MarkingCount)>> {
    chains_with_census(w, k, p, true)
}

/// Signed sums over paths, tracking whether any `(end, q-monomial)` slot receives both signs.
#[derive(Default)]
struct Tally {
    sums: BTreeMap<Permutation, Polynomial>,
    signs: BTreeMap<(Permutation, Monomial), (bool, bool)>,
}

impl Tally {
    fn add(&mut self, end: &Permutation, qweight: &Monomial, c: i64) {
        if c == 0 {
            return;
        }
        *self.sums.entry(end.clone()).or_default() += Polynomial::term(c, qweight.clone());
        let slot = self.signs.entry((end.clone(), qweight.clone())).or_default();
        if c > 0 {
            slot.0 = true;
        } else {
            slot.1 = true;
        }
    }

    fn finish(self, basis: Basis) -> (Expansion, bool) {
        let no_cancellation = self.signs.values().all(|&(pos, neg)| !(pos && neg));
        (Expansion::from_map(basis, self.sums), no_cancellation)
    }
}

/// A path-sum formula next to the expansion of the product it claims to compute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub formula: Expansion,
    pub oracle: Expansion,
    pub agrees: bool,
    pub no_cancellation: bool,
}

impl FormulaCheck {
    fn new((formula, no_cancellation): (Expansion, bool), oracle: Expansion) -> Self {
        let agrees = formula.as_map() == oracle.as_map();
        FormulaCheck { formula, oracle, agrees, no_cancellation }
    }

    pub fn passed(&self) -> bool {
        self.agrees && self.no_cancellation
    }
}

/// `𝔊_w g_p^k = Σ_γ m_p(γ) 𝔊_{end(γ)}` over `k`-Pieri chains, against direct multiplication.
pub fn pieri_product(w: &Permutation, p: usize, k: usize) -> Result<FormulaCheck> {
    let mut tally = Tally::default();
    for (c, m) in pieri_chains(w, k, p)? {
        tally.add(c.end(), &Monomial::one(), m.m(p));
    }
    let oracle = expand_grothendieck(&(grothendieck(w) * elem_family(p, k, ElemKind::G)))?;
    Ok(FormulaCheck::new(tally.finish(Basis::Grothendieck), oracle))
}

/// Which paths count as quantum `k`-Pieri chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainReading {
    /// Every path in the quantum `k`-Bruhat graph satisfying (P1) and (P2).
    Literal,
    /// As `Literal`, but a label may not repeat immediately (no up-then-down on `(k,k+1)`).
    NoBacktrack,
}

impl ChainReading {
    fn admits(self, c: &ChainRecord) -> bool {
        match self {
            ChainReading::Literal => true,
            ChainReading::NoBacktrack => c.labels.windows(2).all(|l| l[0] != l[1]),
        }
    }
}

/// Conjectural quantum Pieri formula `𝔊ᵠ_w G_p^k = Σ_π m_p(π) q(π) 𝔊ᵠ_{end(π)}`, against direct multiplication.
pub fn quantum_pieri_product(w: &Permutation, p: usize, k: usize) -> Result<FormulaCheck> {
    quantum_pieri_product_with(w, p, k, ChainReading::Literal)
}

pub fn quantum_pieri_product_with(w: &Permutation, p: usize, k: usize, reading: ChainReading) -> Result<FormulaCheck> {
    let mut tally = Tally::default();
    for (c, m) in quantum_pieri_chains(w, k, p)? {
        if reading.admits(&c) {
            tally.add(c.end(), &c.qweight, m.m(p));
        }
    }
    let oracle = expand_qgrothendieck(&(quantum_grothendieck(w) * g_quantum(p, k, Variant::Plain)))?;
    Ok(FormulaCheck::new(tally.finish(Basis::QGrothendieck), oracle))
}

fn monk_x_dfs(rec: &mut ChainRecord, k: usize, n: usize, amax: usize, out: &mut Vec<ChainRecord>) {
    monk_x_tail(rec, k, n + 1, out);
    for a in 1..amax {
        if rec.push(a, k) {
            monk_x_dfs(rec, k, n, a, out);
            rec.pop();
        }
    }
}

fn monk_x_tail(rec: &mut ChainRecord, k: usize, bmax: usize, out: &mut Vec<ChainRecord>) {
    out.push(rec.clone());
    for b in k + 1..bmax {
        if rec.push(k, b) {
            monk_x_tail(rec, k, b, out);
            rec.pop();
        }
    }
}

/// Paths `(a_1,k)…(a_s,k)(k,b_1)…(k,b_t)` with `a_s < ⋯ < a_1 < k < b_t < ⋯ < b_1`, possibly empty.
pub fn monk_x_paths(w: &Permutation, k: usize) -> Result<Vec<ChainRecord>> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("k must be positive".into()));
    }
    adaptive(w.size().max(k) + 1, |n| {
        let mut out = Vec::new();
        monk_x_dfs(&mut ChainRecord::empty(w.clone()), k, n, k, &mut out);
        Ok(out)
    })
}

/// `(1-q_k)(1-x_k) 𝔊ᵠ_w = Σ_π (-1)^t q(π) 𝔊ᵠ_{end(π)}`, against direct multiplication.
pub fn monk_paths(w: &Permutation, k: usize) -> Result<FormulaCheck> {
    let mut tally = Tally::default();
    for c in monk_x_paths(w, k)? {
        let t = c.labels.iter().filter(|l| l.0 == k).count();
        tally.add(c.end(), &c.qweight, if t % 2 == 0 { 1 } else { -1 });
    }
    let lhs = Polynomial::one_minus(Var::q(k)) * Polynomial::one_minus(Var::x(k)) * quantum_grothendieck(w);
    let (formula, _) = tally.finish(Basis::QGrothendieck);
    let oracle = expand_qgrothendieck(&lhs)?;
    let agrees = formula.resum() == lhs;
    Ok(FormulaCheck { formula, oracle, agrees, no_cancellation: true })
}

fn monk_sk_dfs(rec: &mut ChainRecord, k: usize, n: usize, out: &mut Vec<ChainRecord>) {
    for e in rec.end().quantum_edges(Some(k), n) {
        if rec.labels.last().is_some_and(|&l| !precedes(l, e.label)) {
            continue;
        }
        rec.push(e.label.0, e.label.1);
        out.push(rec.clone());
        monk_sk_dfs(rec, k, n, out);
        rec.pop();
    }
}

/// Nonempty paths in the quantum `k`-Bruhat graph with `≺`-increasing labels.
pub fn monk_sk_paths(w: &Permutation, k: usize) -> Result<Vec<ChainRecord>> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("k must be positive".into()));
    }
    adaptive(w.size().max(k) + 1, |n| {
        let mut out = Vec::new();
        monk_sk_dfs(&mut ChainRecord::empty(w.clone()), k, n, &mut out);
        Ok(out)
    })
}

/// `𝔊ᵠ_w 𝔊ᵠ_{s_k} = Σ_π (-1)^{ℓ(π)-1} q(π) 𝔊ᵠ_{end(π)}`, against direct multiplication.
pub fn monk_product(w: &Permutation, k: usize) -> Result<FormulaCheck> {
    let mut tally = Tally::default();
    for c in monk_sk_paths(w, k)? {
        tally.add(c.end(), &c.qweight, if c.len() % 2 == 1 { 1 } else { -1 });
    }
    let oracle = expand_qgrothendieck(&(quantum_grothendieck(w) * quantum_grothendieck(&Permutation::s(k))))?;
    Ok(FormulaCheck::new(tally.finish(Basis::QGrothendieck), oracle))
}

/// Finitely supported element of `ℤ[q][S_∞]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    support: BTreeMap<Permutation, Polynomial>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: &Permutation) -> Self {
        let mut v = Self::zero();
        v.add_term(w, &Polynomial::one());
        v
    }

    pub fn from_map(map: BTreeMap<Permutation, Polynomial>) -> Self {
        GroupAlgebraElement { support: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_expansion(e: &Expansion) -> Self {
        Self::from_map(e.as_map())
    }

    pub fn support(&self) -> &BTreeMap<Permutation, Polynomial> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coefficient(&self, w: &Permutation) -> Polynomial {
        self.support.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: &Permutation, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.support.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.support.remove(w);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &GroupAlgebraElement, c: &Polynomial) {
        for (w, d) in &other.support {
            self.add_term(w, &(c * d));
        }
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// The expansion `Σ c_w · basis(w)`.
    pub fn to_expansion(&self, basis: Basis) -> Expansion {
        Expansion::from_map(basis, self.support.clone())
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(w, c)| format!("({c})[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Operators of the quantum Bruhat representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QbOp {
    /// `[i,j]`, with `[j,i] = -[i,j]`.
    Tij(usize, usize),
    /// `h_ij = 1 + [i,j]`.
    H(usize, usize),
    /// `h_ij^{-1} = 1 - [i,j]` for `j > i + 1`.
    HInvNonAdj(usize, usize),
    /// `1 - [i,j]`.
    OneMinusTij(usize, usize),
}

impl QbOp {
    fn indices(self) -> (usize, usize) {
        match self {
            QbOp::Tij(i, j) | QbOp::H(i, j) | QbOp::HInvNonAdj(i, j) | QbOp::OneMinusTij(i, j) => (i, j),
        }
    }

    fn validate(self) -> Result<()> {
        let (i, j) = self.indices();
        if i == 0 || j == 0 || i == j {
            return Err(Error::InvalidOperator(format!("{self:?}")));
        }
        if let QbOp::HInvNonAdj(..) = self {
            if j <= i + 1 {
                return Err(Error::InvalidOperator(format!("{self:?}: h_ij^-1 needs j > i+1")));
            }
        }
        Ok(())
    }
}

/// `[i,j] w` as `(sign, q-weight, w t_ij)`, or `None` when the action vanishes.
fn bracket(i: usize, j: usize, w: &Permutation) -> Option<(i64, Monomial, Permutation)> {
    let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    w.quantum_edge(a, b).map(|e| (sign, e.weight, e.to))
}

fn apply_op(op: QbOp, v: &GroupAlgebraElement) -> GroupAlgebraElement {
    let (i, j) = op.indices();
    let (keep, bsign) = match op {
        QbOp::Tij(..) => (false, 1),
        QbOp::H(..) => (true, 1),
        QbOp::HInvNonAdj(..) | QbOp::OneMinusTij(..) => (true, -1),
    };
    let mut out = GroupAlgebraElement::zero();
    for (w, c) in &v.support {
        if keep {
            out.add_term(w, c);
        }
        if let Some((s, m, u)) = bracket(i, j, w) {
            out.add_term(&u, &c.mul_monomial(&m).scale(&(s * bsign).into()));
        }
    }
    out
}

/// Applies an operator word, leftmost factor first.
pub fn qb_apply(ops: &[QbOp], v: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    for op in ops {
        op.validate()?;
    }
    Ok(ops.iter().fold(v.clone(), |acc, &op| apply_op(op, &acc)))
}

/// The word for `A_k = (1-q_k)(1-X_k)` in `S_n`.
pub fn dunkl_word(k: usize, n: usize) -> Vec<QbOp> {
    let mut word: Vec<QbOp> = (1..k).rev().map(|i| QbOp::H(i, k)).collect();
    word.extend((k + 2..=n).rev().map(|j| QbOp::HInvNonAdj(k, j)));
    if k < n {
        word.push(QbOp::OneMinusTij(k, k + 1));
    }
    word
}

static DUNKL: Memo<(usize, usize, Permutation), GroupAlgebraElement> = Memo::new();

/// `A_k v` in `ℤ[q][S_n]`.
pub fn dunkl_cleared(k: usize, v: &GroupAlgebraElement, n: usize) -> Result<GroupAlgebraElement> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange(format!("need 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let word = dunkl_word(k, n);
    let mut out = GroupAlgebraElement::zero();
    for (w, c) in &v.support {
        let image = DUNKL.try_get_or_insert_with(&(k, n, w.clone()), || qb_apply(&word, &GroupAlgebraElement::basis(w)))?;
        out.add_scaled(&image, c);
    }
    Ok(out)
}

/// `∏_{i<n} (1-q_i)^{D_i}` together with `D`.
fn clearing(parts: &BTreeMap<Vec<u32>, Polynomial>, n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for a in parts.keys() {
        for (i, &e) in a.iter().enumerate() {
            d[i + 1] = d[i + 1].max(e);
        }
    }
    d
}

fn one_minus_q_pow(i: usize, e: u32, n: usize) -> Polynomial {
    if i >= n {
        Polynomial::one()
    } else {
        Polynomial::one_minus(Var::q(i)).pow(e)
    }
}

/// `c · F(X)(v)` in `ℤ[q][S_n]` with `c = ∏_{i<n} (1-q_i)^{D_i}`, where `D_i` is the degree of `F` in `x_i`.
///
/// Returns the element and `c`.
pub fn dunkl_apply(f: &Polynomial, v: &GroupAlgebraElement, n: usize) -> Result<(GroupAlgebraElement, Polynomial)> {
    if f.involves(Family::Y) {
        return Err(Error::UnexpectedVariable("y".into()));
    }
    if f.max_index(Family::Q) >= n {
        return Err(Error::IndexOutOfRange(format!("q_{} does not exist in S_{n}", f.max_index(Family::Q))));
    }
    let parts = f.shifted_expand(n)?;
    let d = clearing(&parts, n);
    let cleared = Polynomial::product(&(1..=n).map(|i| one_minus_q_pow(i, d[i], n)).collect::<Vec<_>>());
    let mut states: HashMap<Vec<u32>, GroupAlgebraElement> = HashMap::new();
    states.insert(Vec::new(), v.clone());
    let mut out = GroupAlgebraElement::zero();
    for (a, c) in &parts {
        let state = dunkl_state(a, n, &mut states)?;
        let factors: Vec<Polynomial> = (1..=n).map(|i| one_minus_q_pow(i, d[i] - a.get(i - 1).copied().unwrap_or(0), n)).collect();
        out.add_scaled(&state, &(c * &Polynomial::product(&factors)));
    }
    Ok((out, cleared))
}

/// `A_1^{a_1} ⋯ A_j^{a_j}` applied to the base element, `A_1` first.
fn dunkl_state(a: &[u32], n: usize, states: &mut HashMap<Vec<u32>, GroupAlgebraElement>) -> Result<GroupAlgebraElement> {
    if let Some(s) = states.get(a) {
        return Ok(s.clone());
    }
    let j = a.len();
    let mut prev = a[..j - 1].to_vec();
    while prev.last() == Some(&0) {
        prev.pop();
    }
    let mut s = dunkl_state(&prev, n, states)?;
    for _ in 0..a[j - 1] {
        s = dunkl_cleared(j, &s, n)?;
    }
    states.insert(a.to_vec(), s.clone());
    Ok(s)
}

/// `c · F(X)(1)`; see [`dunkl_apply`].
pub fn dunkl_evaluate(f: &Polynomial, n: usize) -> Result<(GroupAlgebraElement, Polynomial)> {
    dunkl_apply(f, &GroupAlgebraElement::basis(&Permutation::identity()), n)
}

fn g_or_zero(p: i64, k: i64) -> Polynomial {
    if p < 0 || k < 0 {
        Polynomial::zero()
    } else {
        elem_family(p as usize, k as usize, ElemKind::G)
    }
}

fn q_or_zero(i: i64) -> Polynomial {
    if i <= 0 {
        Polynomial::zero()
    } else {
        Polynomial::q(i as usize)
    }
}

/// `(1-q_{k-1}) f_p^k = (g_p^{k-1} - g_{p-1}^{k-1}) - q_{k-1}(g_{p-1}^{k-2} - g_{p-2}^{k-2})` for `p ≥ 2`,
/// and `g_1^{k-1} - 1` for `p = 1`, where `Ḡ_0 = 1` acts trivially.
pub fn cleared_f(p: usize, k: usize) -> Polynomial {
    if p == 1 {
        return g_or_zero(1, k as i64 - 1) - Polynomial::one();
    }
    cleared_f_printed(p, k)
}

/// The displayed formula for `(1-q_{k-1}) f_p^k`, taken literally for every `p`.
pub fn cleared_f_printed(p: usize, k: usize) -> Polynomial {
    let (p, k) = (p as i64, k as i64);
    (g_or_zero(p, k - 1) - g_or_zero(p - 1, k - 1)) - q_or_zero(k - 1) * (g_or_zero(p - 1, k - 2) - g_or_zero(p - 2, k - 2))
}

fn grothendieck_element(f: &Polynomial) -> Result<GroupAlgebraElement> {
    Ok(GroupAlgebraElement::from_expansion(&expand_grothendieck(f)?))
}

/// Whether `w` is the identity or has its first descent after `k`.
pub fn descent_hypothesis(w: &Permutation, k: usize) -> bool {
    w.first_descent().is_none_or(|d| d > k)
}

/// `A_k(𝔊_w · (1-q_{k-1}) f_p^k) = (1-q_{k-1}) 𝔊_w (g_p^k - g_{p-1}^{k-1})` in `S_n`.
pub fn verify_main(w: &Permutation, p: usize, k: usize, n: usize) -> Result<bool> {
    if !descent_hypothesis(w, k) || w.size() > n || k >= n {
        return Err(Error::HypothesisViolation(format!("w={w} needs first descent > k={k} and w ∈ S_n with k < n={n}")));
    }
    let gw = grothendieck(w);
    let lhs = dunkl_cleared(k, &grothendieck_element(&(&gw * &cleared_f(p, k)))?, n)?;
    let rhs_poly = (Polynomial::one() - q_or_zero(k as i64 - 1)) * gw * (g_or_zero(p as i64, k as i64) - g_or_zero(p as i64 - 1, k as i64 - 1));
    Ok(lhs == grothendieck_element(&rhs_poly)?)
}

/// `G_p^k(X)(𝔊_w) = g_p^k 𝔊_w` in `S_n` for `k < n`, denominators cleared.
///
/// For `k = n` the right side leaves `S_n`; that instance is the `k < n + 1` case in `S_{n+1}`.
pub fn verify_gp_action(w: &Permutation, p: usize, k: usize, n: usize) -> Result<bool> {
    if !descent_hypothesis(w, k) || w.size() > n || k >= n {
        return Err(Error::HypothesisViolation(format!("w={w} needs first descent > k={k} and w ∈ S_n with k < n={n}")));
    }
    let (lhs, c) = dunkl_apply(&g_quantum(p, k, Variant::Plain), &GroupAlgebraElement::basis(w), n)?;
    let rhs = grothendieck_element(&(grothendieck(w) * elem_family(p, k, ElemKind::G)))?.scale(&c);
    Ok(lhs == rhs)
}

/// `G_{p_1…p_{n-1}}(X)(1) = g_{p_1…p_{n-1}}`, denominators cleared.
pub fn verify_product_action(ps: &[usize]) -> Result<bool> {
    let n = ps.len() + 1;
    let (lhs, c) = dunkl_evaluate(&quantum_monomial(QuantumFamily::G, ps), n)?;
    let rhs = grothendieck_element(&elem_monomial(ps, ElemKind::G))?.scale(&c);
    Ok(lhs == rhs)
}

/// `𝔊ᵠ_w(X)(1) = 𝔊_w` in `S_n`, denominators cleared.
pub fn verify_quantmap(w: &Permutation, n: usize) -> Result<bool> {
    let (lhs, c) = dunkl_evaluate(&quantum_grothendieck(w), n)?;
    Ok(lhs == GroupAlgebraElement::basis(w).scale(&c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section5 {
    Main,
    GpAction,
    ProductAction,
    QuantMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section5Report {
    pub which: Section5,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Section5Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one of the Dunkl-element identities over every admissible instance in `S_n`.
pub fn verify_section5(which: Section5, n: usize) -> Result<Section5Report> {
    let mut report = Section5Report { which, n, checked: 0, failures: Vec::new() };
    let mut record = |ok: bool, what: String| {
        report.checked += 1;
        if !ok {
            report.failures.push(what);
        }
    };
    match which {
        Section5::Main | Section5::GpAction => {
            for k in 1..n {
                for w in Permutation::all(n).into_iter().filter(|w| descent_hypothesis(w, k)) {
                    for p in 1..=k {
                        let ok = if which == Section5::Main { verify_main(&w, p, k, n)? } else { verify_gp_action(&w, p, k, n)? };
                        record(ok, format!("w={w} p={p} k={k}"));
                    }
                }
            }
        }
        Section5::ProductAction => {
            for ps in elementary_indices(n) {
                record(verify_product_action(&ps)?, format!("p={ps:?}"));
            }
        }
        Section5::QuantMap => {
            for w in Permutation::all(n) {
                record(verify_quantmap(&w, n)?, format!("w={w}"));
            }
        }
    }
    Ok(report)
}

/// First violation of the quadratic-algebra relations on the basis of `S_n`, if any.
pub fn relations_counterexample(n: usize) -> Option<String> {
    let apply = |ops: &[QbOp], w: &Permutation| qb_apply(ops, &GroupAlgebraElement::basis(w)).expect("valid operators");
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    for w in Permutation::all(n) {
        for &(i, j) in &pairs {
            let mut sum = apply(&[QbOp::Tij(i, j)], &w);
            sum.add_scaled(&apply(&[QbOp::Tij(j, i)], &w), &Polynomial::one());
            if !sum.is_zero() {
                return Some(format!("(0) fails for [{i},{j}] at {w}"));
            }
            let sq = apply(&[QbOp::Tij(i, j), QbOp::Tij(i, j)], &w);
            let expected = if j == i + 1 { GroupAlgebraElement::basis(&w).scale(&Polynomial::q(i)) } else { GroupAlgebraElement::zero() };
            if sq != expected {
                return Some(format!("(1) fails for [{i},{j}] at {w}"));
            }
            for &(k, l) in &pairs {
                if [k, l].iter().any(|x| *x == i || *x == j) {
                    continue;
                }
                if apply(&[QbOp::Tij(i, j), QbOp::Tij(k, l)], &w) != apply(&[QbOp::Tij(k, l), QbOp::Tij(i, j)], &w) {
                    return Some(format!("(2) fails for [{i},{j}], [{k},{l}] at {w}"));
                }
            }
            for k in j + 1..=n {
                let mut yb = apply(&[QbOp::Tij(i, j), QbOp::Tij(j, k)], &w);
                yb.add_scaled(&apply(&[QbOp::Tij(j, k), QbOp::Tij(k, i)], &w), &Polynomial::one());
                yb.add_scaled(&apply(&[QbOp::Tij(k, i), QbOp::Tij(i, j)], &w), &Polynomial::one());
                if !yb.is_zero() {
                    return Some(format!("(3) fails for ({i},{j},{k}) at {w}"));
                }
            }
        }
    }
    None
}

/// First basis element of `S_n` on which some `A_i A_j ≠ A_j A_i`, if any.
pub fn dunkl_commute_counterexample(n: usize) -> Result<Option<String>> {
    for w in Permutation::all(n) {
        let v = GroupAlgebraElement::basis(&w);
        for i in 1..=n {
            for j in i + 1..=n {
                let ij = dunkl_cleared(i, &dunkl_cleared(j, &v, n)?, n)?;
                let ji = dunkl_cleared(j, &dunkl_cleared(i, &v, n)?, n)?;
                if ij != ji {
                    return Ok(Some(format!("A_{i} A_{j} ≠ A_{j} A_{i} at {w}")));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }
    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }
    fn elem(terms: &[(&str, &str)]) -> GroupAlgebraElement {
        let mut v = GroupAlgebraElement::zero();
        for (c, u) in terms {
            v.add_term(&w(u), &p(c));
        }
        v
    }

    const W9: &str = "1,3,5,7,9,11,12,6,10,2,8,4";
    const GAMMA_BAR: [(usize, usize); 4] = [(2, 12), (1, 10), (3, 8), (2, 8)];

    #[test]
    fn precedence_order() {
        assert!(precedes((1, 5), (3, 4)));
        assert!(precedes((1, 4), (3, 4)));
        assert!(!precedes((3, 4), (1, 4)));
        assert!(!precedes((1, 4), (1, 5)));
    }

    #[test]
    fn pieri_from_identity() {
        let chains = pieri_chains(&Permutation::identity(), 1, 1).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].0.labels, vec![(1, 2)]);
        assert_eq!(chains[0].1.m(1), 1);
    }

    #[test]
    fn section9_marking_values() {
        let start = w(W9);
        let with = |extra: &[(usize, usize)]| [GAMMA_BAR.as_slice(), extra].concat();
        type Case = (Vec<(usize, usize)>, usize, [(usize, i64); 2]);
        let cases: [Case; 5] = [
            (with(&[]), 5, [(4, 0), (3, -1)]),
            (with(&[(5, 6)]), 5, [(4, -1), (3, 2)]),
            (with(&[(5, 6), (4, 6)]), 5, [(4, 2), (3, -1)]),
            (with(&[]), 4, [(3, -1), (2, 1)]),
            (with(&[(4, 5)]), 4, [(3, 2), (2, -1)]),
        ];
        for (labels, k, expected) in cases {
            let chain = ChainRecord::from_labels(start.clone(), &labels).unwrap();
            assert!(chain.is_classical());
            assert!(labels.iter().all(|&(a, b)| a <= k && k < b));
            assert!(is_pieri(&labels));
            let census = marking_census(&labels);
            for (pp, m) in expected {
                assert_eq!(census.m(pp), m, "{labels:?} p={pp}");
            }
        }
        let end = ChainRecord::from_labels(start, &with(&[(5, 6), (4, 6)])).unwrap();
        assert_eq!(end.end(), &w("2,5,6,9,11,7,12,4,10,1,8,3"));
    }

    #[test]
    fn marking_rules_by_hand() {
        // (M3) marks the whole initial run with equal b and decreasing a.
        let c = marking_census(&[(3, 5), (2, 5), (1, 5)]);
        assert_eq!(c.counts[&3], 1);
        assert_eq!(c.counts[&2], 0);
        // A repeated a can never be marked, and an unmarked cover needs ≺ with its successor.
        let c = marking_census(&[(1, 3), (1, 2)]);
        assert_eq!(c.counts[&1], 1);
        assert_eq!(c.counts[&2], 0);
    }

    #[test]
    fn pieri_examples() {
        let r = pieri_product(&w("213"), 1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.formula.as_map(), BTreeMap::from([(w("312"), p("1"))]));
        for k in 1..=3 {
            for pp in 1..=k {
                let r = pieri_product(&Permutation::identity(), pp, k).unwrap();
                assert!(r.passed());
                assert_eq!(r.formula.as_map(), BTreeMap::from([(Permutation::cycle(k, pp).unwrap(), p("1"))]));
            }
        }
        assert!(pieri_product(&w("213"), 1, 2).unwrap().passed());
    }

    #[test]
    fn pieri_theorem_on_s3() {
        for u in Permutation::all(3) {
            for k in 1..=3 {
                for pp in 1..=k {
                    let r = pieri_product(&u, pp, k).unwrap();
                    assert!(r.agrees, "w={u} p={pp} k={k}: {:?} vs {:?}", r.formula, r.oracle);
                    assert!(r.no_cancellation, "w={u} p={pp} k={k}");
                }
            }
        }
    }

    #[test]
    fn every_pieri_chain_admits_a_positive_marking() {
        for u in Permutation::all(3) {
            for k in 1..=3 {
                for (c, m) in pieri_chains(&u, k, 1).unwrap() {
                    assert!(m.counts.iter().any(|(&pp, &n)| pp > 0 && n > 0), "{c}");
                }
            }
        }
    }

    #[test]
    fn monk_x_examples() {
        let r = monk_paths(&Permutation::identity(), 1).unwrap();
        assert!(r.agrees);
        assert_eq!(r.formula.as_map(), BTreeMap::from([(Permutation::identity(), p("1")), (w("213"), p("-1"))]));
        let r = monk_paths(&Permutation::identity(), 2).unwrap();
        assert!(r.agrees);
        let expected = BTreeMap::from([(Permutation::identity(), p("1")), (w("213"), p("1")), (w("132"), p("-1")), (w("231"), p("-1"))]);
        assert_eq!(r.formula.as_map(), expected);
        assert_eq!(r.formula.resum(), p("(1-q2)*(1-x2)"));
    }

    #[test]
    fn monk_theorems_on_s3() {
        for u in Permutation::all(3) {
            for k in 1..=3 {
                let r = monk_paths(&u, k).unwrap();
                assert!(r.agrees, "x form w={u} k={k}");
                let r = monk_product(&u, k).unwrap();
                assert!(r.passed(), "s_k form w={u} k={k}: {:?} vs {:?}", r.formula, r.oracle);
            }
        }
    }

    #[test]
    fn monk_sk_example() {
        let r = monk_product(&w("213"), 1).unwrap();
        let expected = BTreeMap::from([(w("312"), p("1")), (Permutation::identity(), p("q1")), (w("132"), p("-q1"))]);
        assert_eq!(r.formula.as_map(), expected);
        let r = monk_product(&Permutation::identity(), 2).unwrap();
        assert_eq!(r.formula.as_map(), BTreeMap::from([(Permutation::s(2), p("1"))]));
    }

    #[test]
    fn quantum_pieri_with_p1_is_monk_without_backtracking() {
        for u in Permutation::all(3) {
            for k in 1..=2 {
                let r = quantum_pieri_product_with(&u, 1, k, ChainReading::NoBacktrack).unwrap();
                assert!(r.agrees, "w={u} k={k}");
                assert_eq!(r.formula.as_map(), monk_product(&u, k).unwrap().formula.as_map());
            }
        }
    }

    #[test]
    fn quantum_pieri_literal_reading_counts_backtracks() {
        // (1,2) up then (1,2) down is a quantum 1-Pieri chain with one 1-marking, adding -q1 at id.
        let r = quantum_pieri_product(&Permutation::identity(), 1, 1).unwrap();
        assert!(!r.agrees);
        assert_eq!(r.formula.coefficient(&Permutation::identity()), p("-q1"));
        assert_eq!(r.oracle.as_map(), BTreeMap::from([(w("21"), p("1"))]));
    }

    #[test]
    fn chain_json_shape() {
        let c = ChainRecord::from_labels(w("213"), &[(1, 2)]).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j, serde_json::json!({"start": "2,1", "labels": [[1, 2]], "directions": ["down"], "qweight": [1]}));
        let back: ChainRecord = serde_json::from_value(j).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn qb_apply_examples() {
        let id = GroupAlgebraElement::basis(&Permutation::identity());
        assert_eq!(qb_apply(&[QbOp::Tij(1, 2)], &id).unwrap(), elem(&[("1", "21")]));
        assert_eq!(qb_apply(&[QbOp::Tij(1, 2)], &elem(&[("1", "21")])).unwrap(), elem(&[("q1", "12")]));
        assert_eq!(qb_apply(&[QbOp::H(1, 2)], &id).unwrap(), elem(&[("1", "12"), ("1", "21")]));
        assert!(matches!(qb_apply(&[QbOp::HInvNonAdj(1, 2)], &id), Err(Error::InvalidOperator(_))));
        assert!(qb_apply(&[QbOp::HInvNonAdj(1, 3)], &id).is_ok());
    }

    #[test]
    fn dunkl_examples() {
        let id = GroupAlgebraElement::basis(&Permutation::identity());
        assert_eq!(dunkl_cleared(1, &id, 2).unwrap(), elem(&[("1", "12"), ("-1", "21")]));
        assert!(dunkl_cleared(2, &GroupAlgebraElement::zero(), 3).unwrap().is_zero());
        let (r, c) = dunkl_evaluate(&p("(1-q1)*x1 + q1"), 3).unwrap();
        assert_eq!(c, p("1-q1"));
        assert_eq!(r, elem(&[("1-q1", "213")]));
        let (r, c) = dunkl_evaluate(&p("1"), 3).unwrap();
        assert_eq!((r, c), (id, p("1")));
    }

    #[test]
    fn dunkl_g_action_on_identity() {
        let (r, c) = dunkl_evaluate(&g_quantum(1, 2, Variant::Plain), 3).unwrap();
        let expected = GroupAlgebraElement::from_expansion(&expand_grothendieck(&elem_family(1, 2, ElemKind::G)).unwrap()).scale(&c);
        assert_eq!(r, expected);
    }

    #[test]
    fn rightmost_first_would_fail() {
        // 𝔊ᵠ_213 = 1 - (1-q1)(1-x1) acts as 1 - A_1; only the leftmost-first word sends [id] to [213].
        let id = GroupAlgebraElement::basis(&Permutation::identity());
        let mut good = id.clone();
        good.add_scaled(&dunkl_cleared(1, &id, 3).unwrap(), &p("-1"));
        assert_eq!(good, elem(&[("1", "213")]));
        let mut word = dunkl_word(1, 3);
        word.reverse();
        let mut bad = id.clone();
        bad.add_scaled(&qb_apply(&word, &id).unwrap(), &p("-1"));
        assert_eq!(bad, elem(&[("1", "213"), ("-1", "312")]));
    }

    #[test]
    fn relations_hold_on_s3() {
        assert_eq!(relations_counterexample(3), None);
        assert_eq!(dunkl_commute_counterexample(3).unwrap(), None);
    }

    #[test]
    fn section5_small_cases() {
        assert!(verify_main(&Permutation::identity(), 1, 1, 2).unwrap());
        assert!(matches!(verify_main(&w("213"), 1, 1, 3), Err(Error::HypothesisViolation(_))));
        assert_ne!(cleared_f(1, 2), cleared_f_printed(1, 2));
        assert_eq!(cleared_f(2, 3), cleared_f_printed(2, 3));
        for which in [Section5::Main, Section5::GpAction, Section5::ProductAction, Section5::QuantMap] {
            let r = verify_section5(which, 3).unwrap();
            assert!(r.passed(), "{which:?}: {:?}", r.failures);
            assert!(r.checked > 0);
        }
    }
}
