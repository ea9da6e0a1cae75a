//! Permutations of the infinite symmetric group in one-line notation.
//!
//! A permutation is stored with trailing fixed points removed, so `213` and `2134` are the same
//! value. Right multiplication by a transposition `t_ab` swaps the entries in positions `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    word: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Edge of the quantum Bruhat graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuantumEdge {
    pub from: Permutation,
    pub to: Permutation,
    pub label: (usize, usize),
    pub weight: Monomial,
    pub direction: Direction,
}

/// `q_a q_{a+1} ⋯ q_{b-1}`.
pub fn q_interval(a: usize, b: usize) -> Monomial {
    let mut m = Monomial::one();
    for i in a..b {
        m.set_exp(Var::q(i), 1);
    }
    m
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Validates a one-line word of a permutation of `1..=word.len()`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::MalformedPermutation(format!("{word:?}")));
            }
            seen[v] = true;
        }
        Ok(Self::from_word_unchecked(word))
    }

    fn from_word_unchecked(mut word: Vec<usize>) -> Self {
        while word.last() == Some(&word.len()) {
            word.pop();
        }
        Permutation { word }
    }

    /// Simple transposition `s_i`.
    pub fn s(i: usize) -> Self {
        assert!(i >= 1);
        Self::identity().swap_positions(i, i + 1)
    }

    /// Longest element `n, n-1, …, 1` of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self::from_word_unchecked((1..=n).rev().collect())
    }

    /// The cycle `c[k,p]`, the Grassmannian permutation whose Schubert polynomial is `e_p(x_1..x_k)`.
    pub fn cycle(k: usize, p: usize) -> Result<Self> {
        if p < 1 || p > k {
            return Err(Error::IndexOutOfRange(format!("cycle({k},{p}) needs 1 <= p <= k")));
        }
        let mut word: Vec<usize> = (1..=k + 1).collect();
        for j in k - p + 1..=k {
            word[j - 1] = j + 1;
        }
        word[k] = k - p + 1;
        Ok(Self::from_word_unchecked(word))
    }

    /// Trimmed one-line word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// One-line word padded with fixed points to length at least `n`.
    pub fn word_n(&self, n: usize) -> Vec<usize> {
        let mut w = self.word.clone();
        w.extend(w.len() + 1..=n);
        w
    }

    /// Smallest `n` with `self ∈ S_n`.
    pub fn size(&self) -> usize {
        self.word.len().max(1)
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(i)`, 1-indexed.
    pub fn at(&self, i: usize) -> usize {
        self.word.get(i - 1).copied().unwrap_or(i)
    }

    pub fn length(&self) -> usize {
        let w = &self.word;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count()).sum()
    }

    /// Lehmer code `c_i = #{j > i : w_j < w_i}`, trimmed.
    pub fn code(&self) -> Vec<u32> {
        let w = &self.word;
        let mut c: Vec<u32> = (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count() as u32).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    /// The permutation with the given code.
    pub fn from_code(code: &[u32]) -> Self {
        let n = code.iter().enumerate().map(|(i, &c)| i + 1 + c as usize).max().unwrap_or(0);
        let mut avail: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for i in 0..n {
            let c = code.get(i).copied().unwrap_or(0) as usize;
            word.push(avail.remove(c));
        }
        Self::from_word_unchecked(word)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self::from_word_unchecked(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let n = self.word.len().max(other.word.len());
        Self::from_word_unchecked((1..=n).map(|i| self.at(other.at(i))).collect())
    }

    /// `self · t_ab`: swaps the entries in positions `a` and `b`.
    pub fn swap_positions(&self, a: usize, b: usize) -> Self {
        let mut w = self.word_n(a.max(b));
        w.swap(a - 1, b - 1);
        Self::from_word_unchecked(w)
    }

    pub fn has_descent(&self, i: usize) -> bool {
        self.at(i) > self.at(i + 1)
    }

    /// Least `i` with `w(i) > w(i+1)`; `None` for the identity.
    pub fn first_descent(&self) -> Option<usize> {
        (1..self.word.len()).find(|&i| self.has_descent(i))
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.word.len()).filter(|&i| self.has_descent(i)).collect()
    }

    /// A reduced word `i_1 … i_l` with `self = s_{i_1} ⋯ s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = w.first_descent() {
            rev.push(i);
            w = w.swap_positions(i, i + 1);
        }
        rev.reverse();
        rev
    }

    /// `ℓ(self · t_ab) - ℓ(self)` for `a < b`.
    pub fn length_change(&self, a: usize, b: usize) -> isize {
        let (wa, wb) = (self.at(a), self.at(b));
        let (lo, hi) = if wa < wb { (wa, wb) } else { (wb, wa) };
        let between = (a + 1..b).filter(|&c| (lo..hi).contains(&self.at(c)) && self.at(c) != lo).count() as isize;
        if wa < wb {
            1 + 2 * between
        } else {
            -(1 + 2 * between)
        }
    }

    /// Bruhat covers `self ⋖ self·t_ab` with `b ≤ n`, optionally restricted to `a ≤ k < b`.
    pub fn covers(&self, k: Option<usize>, n: usize) -> Vec<((usize, usize), Permutation)> {
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if k.is_some_and(|k| !(a <= k && k < b)) {
                    continue;
                }
                if self.length_change(a, b) == 1 {
                    out.push(((a, b), self.swap_positions(a, b)));
                }
            }
        }
        out
    }

    /// Up and down edges of the quantum Bruhat graph of `S_n` leaving `self`.
    pub fn quantum_edges(&self, k: Option<usize>, n: usize) -> Vec<QuantumEdge> {
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if k.is_some_and(|k| !(a <= k && k < b)) {
                    continue;
                }
                if let Some(e) = self.quantum_edge(a, b) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// The quantum Bruhat edge labeled `(a,b)` out of `self`, if any.
    pub fn quantum_edge(&self, a: usize, b: usize) -> Option<QuantumEdge> {
        let d = self.length_change(a, b);
        let (direction, weight) = if d == 1 {
            (Direction::Up, Monomial::one())
        } else if d == 1 - 2 * (b - a) as isize {
            (Direction::Down, q_interval(a, b))
        } else {
            return None;
        };
        Some(QuantumEdge { from: self.clone(), to: self.swap_positions(a, b), label: (a, b), weight, direction })
    }

    /// Whether `self ≤ other` in Bruhat order, by comparing sorted prefixes.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        let n = self.word.len().max(other.word.len());
        let (u, v) = (self.word_n(n), other.word_n(n));
        let mut pu = Vec::with_capacity(n);
        let mut pv = Vec::with_capacity(n);
        for i in 0..n {
            let pos = pu.partition_point(|&x| x < u[i]);
            pu.insert(pos, u[i]);
            let pos = pv.partition_point(|&x| x < v[i]);
            pv.insert(pos, v[i]);
            if pu.iter().zip(&pv).any(|(a, b)| a > b) {
                return false;
            }
        }
        true
    }

    /// All permutations of `S_n` in lexicographic order of their words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut w: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Self::from_word_unchecked(w.clone()));
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).expect("successor exists");
            w.swap(i, j);
            w[i + 1..].reverse();
        }
    }

    /// Comma-separated word padded to length `n`.
    pub fn to_string_n(&self, n: usize) -> String {
        self.word_n(n.max(1)).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Compact word such as `2143`; only meaningful below 10.
    pub fn compact(&self, n: usize) -> String {
        self.word_n(n.max(1)).iter().map(|v| v.to_string()).collect()
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.word.len().max(other.word.len());
        self.word_n(n).cmp(&other.word_n(n))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_n(1))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,1,3` and, for single-digit entries, `213`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = if s.contains(',') { s.split(',').collect() } else { s.split("").filter(|p| !p.is_empty()).collect() };
        let word = parts
            .iter()
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::MalformedPermutation(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
