//! Polynomial solutions of the power-sum system
//! `Σ_i ∂^ℓ f/∂X_i^ℓ = 0`, `1 ≤ ℓ ≤ d`, in `ℚ[X_1, …, X_d]`.
//!
//! Solutions are searched among polynomials of degree at most `d(d-1)/2`,
//! the degree of the Vandermonde determinant.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{factorial, int, nullspace_basis, rank, Monomial, Poly, Rational, Ring, SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdeError {
    #[error("ℓ = {ell} is outside 1..={d}")]
    EllOutOfRange { ell: usize, d: usize },
    #[error("variable index {index} is outside 0..{nvars}")]
    VarIndex { index: usize, nvars: usize },
}

/// A polynomial in `X_1, …, X_d`; variable `i` (0-based) stands for `X_{i+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    poly: Poly<usize, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            poly: Poly::zero(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        MultiPoly {
            nvars,
            poly: Poly::constant(c),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Result<Self, PdeError> {
        if i >= nvars {
            return Err(PdeError::VarIndex { index: i, nvars });
        }
        Ok(MultiPoly {
            nvars,
            poly: Poly::var(i),
        })
    }

    /// From exponent vectors of length `nvars`.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(nvars: usize, terms: I) -> Self {
        let poly = Poly::from_terms(terms.into_iter().map(|(e, c)| (exponent_monomial(&e), c)));
        MultiPoly { nvars, poly }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.poly.total_degree()
    }

    /// Terms as (exponent vector, coefficient), in increasing monomial order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.poly
            .terms()
            .map(|(m, c)| ((0..self.nvars).map(|i| m.exponent(&i)).collect(), c.clone()))
            .collect()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars.max(other.nvars),
            poly: &self.poly + &other.poly,
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars.max(other.nvars),
            poly: &self.poly - &other.poly,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars.max(other.nvars),
            poly: &self.poly * &other.poly,
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            poly: self.poly.scale(c),
        }
    }

    /// `∂^times / ∂X_{i+1}^times`.
    pub fn partial(&self, i: usize, times: u32) -> MultiPoly {
        let mut p = self.poly.clone();
        for _ in 0..times {
            if p.is_zero() {
                break;
            }
            p = p.derivative(&i);
        }
        MultiPoly {
            nvars: self.nvars,
            poly: p,
        }
    }

    /// `∂^β` for an exponent vector `β`.
    pub fn partial_multi(&self, beta: &[u32]) -> MultiPoly {
        beta.iter()
            .enumerate()
            .fold(self.clone(), |acc, (i, &b)| if b == 0 { acc } else { acc.partial(i, b) })
    }
}

impl fmt::Display for MultiPoly {
    /// Terms by decreasing total degree, then decreasing exponent vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (pos, (e, c)) in terms.iter().enumerate() {
            let negative = c < &int(0);
            let mag = if negative { -c.clone() } else { c.clone() };
            match (pos, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("X{}", i + 1) } else { format!("X{}^{x}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if Ring::is_one(&mag) {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

fn exponent_monomial(e: &[u32]) -> Monomial<usize> {
    Monomial::from_factors(e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)))
}

/// `Σ_i ∂^ℓ p/∂X_i^ℓ`.
pub fn newton_operator(p: &MultiPoly, ell: usize) -> Result<MultiPoly, PdeError> {
    let d = p.nvars;
    if ell == 0 || ell > d {
        return Err(PdeError::EllOutOfRange { ell, d });
    }
    Ok((0..d).fold(MultiPoly::zero(d), |acc, i| acc.add(&p.partial(i, ell as u32))))
}

/// `Σ_{i_1≠…≠i_ℓ} ∂^ℓ p/∂X_{i_1}⋯∂X_{i_ℓ}` over ordered tuples of distinct indices.
pub fn distinct_tuple_operator(p: &MultiPoly, ell: usize) -> Result<MultiPoly, PdeError> {
    let d = p.nvars;
    if ell == 0 || ell > d {
        return Err(PdeError::EllOutOfRange { ell, d });
    }
    let mut acc = MultiPoly::zero(d);
    for mask in 0u64..(1 << d) {
        if mask.count_ones() as usize != ell {
            continue;
        }
        let beta: Vec<u32> = (0..d).map(|i| ((mask >> i) & 1) as u32).collect();
        acc = acc.add(&p.partial_multi(&beta));
    }
    Ok(acc.scale(&Rational::from_integer(factorial(ell as u64))))
}

/// Exponent vectors of length `nvars` and total degree at most `bound`,
/// ordered by degree and then by decreasing exponent vector.
pub fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nvars - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        out.push(Vec::new());
        return out;
    }
    for deg in 0..=bound {
        rec(nvars, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// Which operator family defines the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    /// `Σ_i ∂^ℓ/∂X_i^ℓ`.
    PowerSums,
    /// `Σ_{i_1≠…≠i_ℓ} ∂^ℓ/∂X_{i_1}⋯∂X_{i_ℓ}`.
    DistinctTuples,
}

fn apply(system: System, p: &MultiPoly, ell: usize) -> MultiPoly {
    match system {
        System::PowerSums => newton_operator(p, ell),
        System::DistinctTuples => distinct_tuple_operator(p, ell),
    }
    .expect("ell in range")
}

/// A basis of the polynomial solutions of degree at most `bound`.
pub fn solution_space_basis(d: usize, bound: u32, system: System) -> Vec<MultiPoly> {
    let monos = monomials_up_to(d, bound);
    let index: BTreeMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let size = monos.len();
    let mut m = SparseMatrix::new(d * size, size);
    for (col, e) in monos.iter().enumerate() {
        let p = MultiPoly::from_terms(d, [(e.clone(), int(1))]);
        for ell in 1..=d {
            for (img, c) in apply(system, &p, ell).terms() {
                m.set((ell - 1) * size + index[&img], col, c);
            }
        }
    }
    nullspace_basis(&m)
        .into_iter()
        .map(|v| {
            MultiPoly::from_terms(
                d,
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !Ring::is_zero(c))
                    .map(|(i, c)| (monos[i].clone(), c)),
            )
        })
        .collect()
}

pub fn solution_space_dim_with_bound(d: usize, bound: u32, system: System) -> usize {
    solution_space_basis(d, bound, system).len()
}

/// Dimension of the solutions of the power-sum system of degree at most
/// `d(d-1)/2`.
pub fn solution_space_dim(d: usize) -> usize {
    solution_space_dim_with_bound(d, vandermonde_degree(d), System::PowerSums)
}

pub fn vandermonde_degree(d: usize) -> u32 {
    (d * d.saturating_sub(1) / 2) as u32
}

/// `Π_{i<j} (X_i - X_j)`.
pub fn vandermonde(d: usize) -> MultiPoly {
    let mut acc = MultiPoly::constant(d, int(1));
    for i in 0..d {
        for j in i + 1..d {
            let diff = MultiPoly::var(d, i).unwrap().sub(&MultiPoly::var(d, j).unwrap());
            acc = acc.mul(&diff);
        }
    }
    acc
}

/// Dimension of the `ℚ`-span of `polys`.
pub fn multipoly_rank(polys: &[MultiPoly]) -> usize {
    let (m, _) = coefficient_rows(polys);
    rank(&m)
}

fn coefficient_rows(polys: &[MultiPoly]) -> (SparseMatrix<Rational>, usize) {
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let rows: Vec<Vec<(Vec<u32>, Rational)>> = polys.iter().map(MultiPoly::terms).collect();
    for row in &rows {
        for (e, _) in row {
            let next = index.len();
            index.entry(e.clone()).or_insert(next);
        }
    }
    let sparse: Vec<SparseVec> = rows
        .into_iter()
        .map(|row| row.into_iter().map(|(e, c)| (index[&e], c)).collect())
        .collect();
    (SparseMatrix::from_rows(sparse, index.len()), index.len())
}

/// A basis, extracted greedily, of the span of all partial derivatives
/// `∂^β Π_{i<j}(X_i - X_j)`, with `β` running through exponent vectors in
/// the order of [`monomials_up_to`].
pub fn vandermonde_derivative_basis(d: usize) -> Vec<MultiPoly> {
    let v = vandermonde(d);
    let mut basis: Vec<MultiPoly> = Vec::new();
    for beta in monomials_up_to(d, vandermonde_degree(d)) {
        let p = v.partial_multi(&beta);
        if p.is_zero() {
            continue;
        }
        basis.push(p);
        if multipoly_rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// Whether every power-sum operator kills `p`.
pub fn is_solution(p: &MultiPoly) -> bool {
    (1..=p.nvars).all(|ell| newton_operator(p, ell).expect("ell in range").is_zero())
}

/// Dimension of the intersection of the span of `polys` with the solution
/// space of degree at most `bound`.
pub fn span_within_solutions(polys: &[MultiPoly], bound: u32) -> usize {
    let d = polys.first().map(MultiPoly::nvars).unwrap_or(0);
    let sols = solution_space_basis(d, bound, System::PowerSums);
    let mut all = sols.clone();
    all.extend_from_slice(polys);
    sols.len() + multipoly_rank(polys) - multipoly_rank(&all)
}
