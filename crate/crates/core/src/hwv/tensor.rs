//! The tensor space `E = F^{⊗d}`, `F = ℚ^{k+1}` with basis `e_0..e_k`, where
//! `e_i` stands for the derivative order `X^{(i)}`.

use std::collections::BTreeMap;
use std::fmt;

use super::HwvError;
use crate::exact::{factorial, int, Rational, Ring};
use crate::tableaux::{GroupAlgebraElem, Permutation, Tableau};

/// A sparse element of `(ℚ^{k+1})^{⊗d}`, keyed by index vectors in `{0..k}^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    d: usize,
    k: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl Tensor {
    pub fn zero(d: usize, k: usize) -> Self {
        Tensor {
            d,
            k,
            terms: BTreeMap::new(),
        }
    }

    /// `e_{i_1} ⊗ … ⊗ e_{i_d}`.
    pub fn basis(k: usize, index: Vec<usize>) -> Result<Self, HwvError> {
        let mut t = Tensor::zero(index.len(), k);
        t.add_term(index, int(1))?;
        Ok(t)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their index vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &[usize]) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(|| int(0))
    }

    pub fn add_term(&mut self, index: Vec<usize>, c: Rational) -> Result<(), HwvError> {
        if index.len() != self.d {
            return Err(HwvError::SizeMismatch {
                expected: self.d,
                got: index.len(),
            });
        }
        if let Some(&v) = index.iter().find(|&&v| v > self.k) {
            return Err(HwvError::EntryOutOfRange { value: v, k: self.k });
        }
        self.push(index, c);
        Ok(())
    }

    // unchecked
    fn push(&mut self, index: Vec<usize>, c: Rational) {
        if Ring::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Ring::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Tensor) -> Result<(), HwvError> {
        if self.d != other.d || self.k != other.k {
            return Err(HwvError::SizeMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor, HwvError> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.push(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor, HwvError> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut out = Tensor::zero(self.d, self.k);
        for (i, a) in &self.terms {
            out.push(i.clone(), a * c);
        }
        out
    }

    /// Position of a basis index in the lexicographic enumeration of `{0..k}^d`.
    pub fn encode(k: usize, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &v| acc * (k + 1) + v)
    }

    pub fn decode(d: usize, k: usize, mut code: usize) -> Vec<usize> {
        let mut out = vec![0; d];
        for slot in out.iter_mut().rev() {
            *slot = code % (k + 1);
            code /= k + 1;
        }
        out
    }

    /// Coordinates in the basis enumerated by [`Tensor::encode`].
    pub fn coordinates(&self) -> BTreeMap<usize, Rational> {
        self.terms
            .iter()
            .map(|(i, c)| (Tensor::encode(self.k, i), c.clone()))
            .collect()
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let idx: Vec<String> = i.iter().map(usize::to_string).collect();
                let idx = format!("({})", idx.join(","));
                if Ring::is_one(c) {
                    idx
                } else {
                    format!("{c}*{idx}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All of `{0..k}^d`, lexicographically.
pub fn basis_indices(d: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let size = (k + 1).pow(d as u32);
    (0..size).map(move |c| Tensor::decode(d, k, c))
}

/// `e_T`: the basis tensor read off `T` row by row.
pub fn tensor_of_tableau(t: &Tableau, k: usize) -> Result<Tensor, HwvError> {
    Tensor::basis(k, t.filling().to_vec())
}

/// Right action `(v_1 ⊗ … ⊗ v_d)·σ = v_{σ(1)} ⊗ … ⊗ v_{σ(d)}`.
pub fn tensor_sigma_action(t: &Tensor, sigma: &Permutation) -> Result<Tensor, HwvError> {
    if sigma.degree() != t.d {
        return Err(HwvError::SizeMismatch {
            expected: t.d,
            got: sigma.degree(),
        });
    }
    let images = sigma.images();
    let mut out = Tensor::zero(t.d, t.k);
    for (i, c) in &t.terms {
        let j: Vec<usize> = images.iter().map(|&s| i[s - 1]).collect();
        out.push(j, c.clone());
    }
    Ok(out)
}

/// `t·x` for `x = Σ x_σ σ` in the group algebra.
pub fn tensor_algebra_action(t: &Tensor, x: &GroupAlgebraElem) -> Result<Tensor, HwvError> {
    if x.degree() != t.d {
        return Err(HwvError::SizeMismatch {
            expected: t.d,
            got: x.degree(),
        });
    }
    let mut out = Tensor::zero(t.d, t.k);
    for (sigma, c) in x.terms() {
        let images = sigma.images();
        for (i, a) in &t.terms {
            let j: Vec<usize> = images.iter().map(|&s| i[s - 1]).collect();
            out.push(j, a * c);
        }
    }
    Ok(out)
}

/// Applies `J` (`e_i ↦ i·e_{i-1}`) in each factor of every ordered tuple of
/// `ℓ` distinct positions, so each `ℓ`-subset is counted `ℓ!` times.
pub fn j_ell(t: &Tensor, ell: usize) -> Result<Tensor, HwvError> {
    if ell == 0 || ell > t.d {
        return Err(HwvError::EllOutOfRange { ell, d: t.d });
    }
    Ok(j_subsets(t, ell).scale(&Rational::from_integer(factorial(ell as u64))))
}

/// `Σ_{|S|=ℓ} J_S`, the subset sum.
pub(crate) fn j_subsets(t: &Tensor, ell: usize) -> Tensor {
    let mut out = Tensor::zero(t.d, t.k);
    for (index, c) in &t.terms {
        let active: Vec<usize> = (0..t.d).filter(|&p| index[p] > 0).collect();
        if active.len() < ell {
            continue;
        }
        for subset in subsets(&active, ell) {
            let mut j = index.clone();
            let mut coeff = c.clone();
            for &p in &subset {
                coeff *= int(j[p] as i64);
                j[p] -= 1;
            }
            out.push(j, coeff);
        }
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `(α·Id + J)^{⊗d} t` for a rational `α`.
pub fn alpha_j_tensor(t: &Tensor, alpha: &Rational) -> Tensor {
    let mut cur = t.clone();
    for p in 0..t.d {
        let mut next = Tensor::zero(t.d, t.k);
        for (index, c) in &cur.terms {
            next.push(index.clone(), c * alpha);
            if index[p] > 0 {
                let mut j = index.clone();
                j[p] -= 1;
                next.push(j, c * int(index[p] as i64));
            }
        }
        cur = next;
    }
    cur
}
