//! Linear algebra over families of differential polynomials.
//!
//! Parametric coefficients are flattened: the coordinate of a polynomial at
//! `(differential monomial, parameter monomial)` is a rational number, so
//! ranks are taken over `ℚ` with parameters treated as indeterminates.

use std::collections::BTreeMap;

use super::{DiffMonomial, DiffPoly};
use crate::exact::{int, rank, solve, Monomial, Param, Rational, SparseMatrix, SparseVec};

pub type CoordinateKey = (DiffMonomial, Monomial<Param>);

fn coordinates(p: &DiffPoly) -> impl Iterator<Item = (CoordinateKey, &Rational)> + '_ {
    p.terms()
        .flat_map(|(m, c)| c.terms().map(move |(pm, r)| ((m.clone(), pm.clone()), r)))
}

/// One row per polynomial; columns are the coordinate keys in decreasing
/// canonical order, which are returned alongside.
pub fn coefficient_matrix(polys: &[DiffPoly]) -> (SparseMatrix<Rational>, Vec<CoordinateKey>) {
    let mut index: BTreeMap<CoordinateKey, usize> = BTreeMap::new();
    for p in polys {
        for (k, _) in coordinates(p) {
            index.entry(k).or_insert(0);
        }
    }
    let keys: Vec<CoordinateKey> = index.keys().rev().cloned().collect();
    for (i, k) in keys.iter().enumerate() {
        index.insert(k.clone(), i);
    }
    let rows: Vec<SparseVec> = polys
        .iter()
        .map(|p| coordinates(p).map(|(k, r)| (index[&k], r.clone())).collect())
        .collect();
    (SparseMatrix::from_rows(rows, keys.len()), keys)
}

/// Dimension of the `ℚ`-span of `polys`.
pub fn span_rank(polys: &[DiffPoly]) -> usize {
    rank(&coefficient_matrix(polys).0)
}

/// Coefficients `c` with `Σ c_i basis_i = target`, or `None` when `target` is
/// outside the span. Free coordinates are set to zero.
pub fn express_in_span(basis: &[DiffPoly], target: &DiffPoly) -> Option<Vec<Rational>> {
    let mut all = basis.to_vec();
    all.push(target.clone());
    let (m, _) = coefficient_matrix(&all);
    // columns of the system are the basis rows of `m`
    let t = m.transpose();
    let b = t.cols() - 1;
    let mut system = SparseMatrix::new(t.rows(), b);
    let mut rhs = vec![int(0); t.rows()];
    for ((i, j), v) in t.entries() {
        if *j == b {
            rhs[*i] = v.clone();
        } else {
            system.set(*i, *j, v.clone());
        }
    }
    solve(&system, &rhs).expect("dimensions agree by construction")
}
