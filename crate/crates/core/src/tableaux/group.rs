//! The symmetric group `Σ_d` and its group algebra over `ℚ`.
//!
//! Products are compositions of maps: `(στ)(i) = σ(τ(i))`.

use std::collections::BTreeMap;
use std::fmt;

use super::{Tableau, TableauxError};
use crate::exact::{int, Rational, Ring};

/// A bijection of `{1, …, d}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    // 0-based images
    map: Vec<usize>,
}

impl Permutation {
    /// From 1-based images `σ(1), …, σ(d)`.
    pub fn new(images: Vec<usize>) -> Result<Self, TableauxError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &v in &images {
            if v == 0 || v > d || seen[v - 1] {
                return Err(TableauxError::NotPermutation(d));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            map: images.into_iter().map(|v| v - 1).collect(),
        })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            map: (0..d).collect(),
        }
    }

    /// The transposition of the 1-based points `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..d).collect();
        map.swap(a - 1, b - 1);
        Permutation { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|v| v + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutations of different degrees");
        Permutation {
            map: other.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Permutation { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.map.len()];
        let mut sign = 1;
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; `e` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut seen = vec![false; self.map.len()];
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.map[i];
            }
            write!(f, "({})", cycle.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `{1..d}` in lexicographic order of their images.
pub fn all_permutations(d: usize) -> Vec<Permutation> {
    fn rec(d: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == d {
            out.push(Permutation { map: cur.clone() });
            return;
        }
        for v in 0..d {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(d, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// A finite `ℚ`-linear combination of permutations of `{1..d}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElem {
    d: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElem {
    pub fn zero(d: usize) -> Self {
        GroupAlgebraElem {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(d: usize) -> Self {
        GroupAlgebraElem::from_perm(Permutation::identity(d), int(1))
    }

    pub fn from_perm(p: Permutation, c: Rational) -> Self {
        let mut e = GroupAlgebraElem::zero(p.degree());
        e.add_term(p, c);
        e
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Permutation) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(|| int(0))
    }

    pub fn add_term(&mut self, p: Permutation, c: Rational) {
        assert_eq!(p.degree(), self.d, "permutation of the wrong degree");
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !Ring::is_zero(&c) {
                    e.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Ring::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GroupAlgebraElem) -> Result<GroupAlgebraElem, TableauxError> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero(self.d);
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a * c);
        }
        out
    }

    fn check(&self, other: &GroupAlgebraElem) -> Result<(), TableauxError> {
        if self.d != other.d {
            return Err(TableauxError::SizeMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(())
    }

    /// Convolution: `(Σ a_σ σ)(Σ b_τ τ) = Σ a_σ b_τ (σ∘τ)`.
    pub fn mul(&self, other: &GroupAlgebraElem) -> Result<GroupAlgebraElem, TableauxError> {
        self.check(other)?;
        let mut acc: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                *acc.entry(s.compose(t)).or_insert_with(|| int(0)) += a * b;
            }
        }
        acc.retain(|_, v| !Ring::is_zero(v));
        Ok(GroupAlgebraElem { d: self.d, terms: acc })
    }

    /// `σ·x·σ^{-1}`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> GroupAlgebraElem {
        let inv = sigma.inverse();
        let mut out = GroupAlgebraElem::zero(self.d);
        for (p, c) in &self.terms {
            out.add_term(sigma.compose(p).compose(&inv), c.clone());
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| if Ring::is_one(c) { p.to_string() } else { format!("{c}*{p}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All permutations of `{1..d}` preserving each block setwise, with their signs.
fn block_group(d: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut group = vec![Permutation::identity(d)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = all_permutations(block.len());
        let mut next = Vec::with_capacity(group.len() * local.len());
        for g in &group {
            for l in &local {
                let mut map = g.map.clone();
                for (i, &src) in block.iter().enumerate() {
                    map[src - 1] = block[l.map[i]] - 1;
                }
                next.push(Permutation { map });
            }
        }
        group = next;
    }
    group
}

/// `a_T = Σ_{p ∈ R(T)} p`, the sum over permutations preserving each row of `T`.
pub fn row_symmetrizer(t: &Tableau) -> GroupAlgebraElem {
    let d = t.filling().len();
    let rows: Vec<Vec<usize>> = t.rows().iter().map(|r| r.to_vec()).collect();
    let mut out = GroupAlgebraElem::zero(d);
    for p in block_group(d, &rows) {
        out.add_term(p, int(1));
    }
    out
}

/// `b_T = Σ_{q ∈ C(T)} ε(q) q`, over permutations preserving each column of `T`.
pub fn column_antisymmetrizer(t: &Tableau) -> GroupAlgebraElem {
    let d = t.filling().len();
    let mut out = GroupAlgebraElem::zero(d);
    for q in block_group(d, &t.columns()) {
        let s = q.sign();
        out.add_term(q, int(s));
    }
    out
}

/// `c_T = b_T·a_T` for a standard tableau `T`.
pub fn young_symmetrizer(t: &Tableau) -> Result<GroupAlgebraElem, TableauxError> {
    if !t.is_standard() {
        return Err(TableauxError::NotStandard);
    }
    column_antisymmetrizer(t).mul(&row_symmetrizer(t))
}
