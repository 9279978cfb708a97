use std::collections::BTreeMap;

use super::rational::Rational;
use super::ring::{ExactDiv, Ring};
use super::ExactError;

/// Sparse vector: index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Sparse matrix; zero entries are never stored and all indices are in range.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<C> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), C>,
}

impl<C: Ring> SparseMatrix<C> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(rows: Vec<Vec<C>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, row: usize, col: usize, value: C) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&C> {
        self.entries.get(&(row, col))
    }

    pub fn entry(&self, row: usize, col: usize) -> C {
        self.get(row, col).cloned().unwrap_or_else(C::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &C)> {
        self.entries.iter()
    }

    pub fn to_dense(&self) -> Vec<Vec<C>> {
        let mut out = vec![vec![C::zero(); self.cols]; self.rows];
        for ((i, j), v) in &self.entries {
            out[*i][*j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|((i, j), v)| ((*j, *i), v.clone()))
                .collect(),
        }
    }
}

impl SparseMatrix<Rational> {
    pub fn from_rows(rows: Vec<SparseVec>, cols: usize) -> Self {
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row {
                m.set(i, j, v);
            }
        }
        m
    }

    fn sparse_rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for ((i, j), v) in &self.entries {
            rows[*i].insert(*j, v.clone());
        }
        rows
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![<Rational as Ring>::zero(); self.rows];
        for ((i, j), a) in &self.entries {
            out[*i] += a * &v[*j];
        }
        out
    }
}

/// Reduced row echelon form with the fixed pivot rule: leftmost column first,
/// then the candidate row with the fewest nonzeros, then the lowest row index.
struct Echelon {
    /// `(pivot column, normalized row)` in increasing pivot column order.
    pivots: Vec<(usize, SparseVec)>,
}

fn axpy(target: &mut SparseVec, factor: &Rational, source: &SparseVec) {
    for (j, v) in source {
        let add = factor * v;
        match target.entry(*j) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(add);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += add;
                if Ring::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }
}

fn echelon(rows: Vec<SparseVec>, cols: usize, full_reduce: bool) -> Echelon {
    let mut remaining: Vec<(usize, SparseVec)> = rows
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .collect();
    let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
    while !remaining.is_empty() {
        let col = remaining
            .iter()
            .map(|(_, r)| *r.keys().next().unwrap())
            .min()
            .unwrap();
        debug_assert!(col < cols);
        let pick = remaining
            .iter()
            .enumerate()
            .filter(|(_, (_, r))| r.keys().next() == Some(&col))
            .min_by_key(|(_, (idx, r))| (r.len(), *idx))
            .map(|(pos, _)| pos)
            .unwrap();
        let (_, mut pivot) = remaining.swap_remove(pick);
        let inv = pivot[&col].recip();
        for v in pivot.values_mut() {
            *v *= &inv;
        }
        for (_, r) in remaining.iter_mut() {
            if let Some(f) = r.get(&col).cloned() {
                axpy(r, &-f, &pivot);
            }
        }
        remaining.retain(|(_, r)| !r.is_empty());
        // swap_remove perturbs order; restore row-index order so ties stay deterministic
        remaining.sort_by_key(|(idx, _)| *idx);
        if full_reduce {
            for (_, r) in pivots.iter_mut() {
                if let Some(f) = r.get(&col).cloned() {
                    axpy(r, &-f, &pivot);
                }
            }
        }
        pivots.push((col, pivot));
    }
    Echelon { pivots }
}

pub fn rank(m: &SparseMatrix<Rational>) -> usize {
    echelon(m.sparse_rows(), m.cols, false).pivots.len()
}

/// Basis of the right kernel `{v : m·v = 0}` in reduced echelon form:
/// one vector per free column, with a 1 in that column.
pub fn nullspace_basis(m: &SparseMatrix<Rational>) -> Vec<Vec<Rational>> {
    let ech = echelon(m.sparse_rows(), m.cols, true);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![<Rational as Ring>::zero(); m.cols];
        v[free] = <Rational as Ring>::one();
        for (pc, row) in &ech.pivots {
            if let Some(a) = row.get(&free) {
                v[*pc] = -a;
            }
        }
        basis.push(v);
    }
    basis
}

/// A solution of `m·x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve(m: &SparseMatrix<Rational>, b: &[Rational]) -> Result<Option<Vec<Rational>>, ExactError> {
    if b.len() != m.rows {
        return Err(ExactError::LengthMismatch {
            expected: m.rows,
            got: b.len(),
        });
    }
    let mut rows = m.sparse_rows();
    for (i, r) in rows.iter_mut().enumerate() {
        if !Ring::is_zero(&b[i]) {
            r.insert(m.cols, b[i].clone());
        }
    }
    let ech = echelon(rows, m.cols + 1, true);
    let mut x = vec![<Rational as Ring>::zero(); m.cols];
    for (pc, row) in &ech.pivots {
        if *pc == m.cols {
            return Ok(None);
        }
        if let Some(v) = row.get(&m.cols) {
            x[*pc] = v.clone();
        }
    }
    Ok(Some(x))
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn det<C: ExactDiv>(m: &SparseMatrix<C>) -> Result<C, ExactError> {
    if m.rows != m.cols {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(C::one());
    }
    let mut a = m.to_dense();
    let mut sign_flip = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(C::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = num.div_exact(&prev).ok_or(ExactError::InexactDivision)?;
            }
            a[i][k] = C::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign_flip { d.neg_ref() } else { d })
}

/// Division-free determinant by Laplace expansion over column subsets
/// (memoized minors of the leading rows). Works over any commutative ring.
pub fn det_by_minors<C: Ring>(m: &SparseMatrix<C>) -> Result<C, ExactError> {
    if m.rows != m.cols {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    assert!(n < usize::BITS as usize, "matrix too large for subset expansion");
    let a = m.to_dense();
    // minors[mask] = det(rows 0..popcount(mask), columns in mask)
    let mut minors: BTreeMap<usize, C> = BTreeMap::new();
    minors.insert(0, C::one());
    for row in &a {
        let mut next: BTreeMap<usize, C> = BTreeMap::new();
        for (mask, minor) in &minors {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << c);
                // expanding along the last row: sign is (-1)^(# chosen columns right of c)
                let above = (new_mask >> (c + 1)).count_ones();
                let term = entry.mul_ref(minor);
                let term = if above % 2 == 1 { term.neg_ref() } else { term };
                next.entry(new_mask)
                    .and_modify(|v: &mut C| v.add_assign_ref(&term))
                    .or_insert(term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        minors = next;
    }
    Ok(minors.remove(&((1usize << n) - 1)).unwrap_or_else(C::zero))
}


#[cfg(test)]
mod tests {
    use super::super::{int, Param, ParamPoly};
    use super::*;

    fn qm(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Rational>::new(0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::<Rational>::identity(3)), 3);
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&SparseMatrix::<Rational>::identity(2)).is_empty());
        assert_eq!(nullspace_basis(&qm(&[&[1, 1]])), vec![vec![int(-1), int(1)]]);
        assert_eq!(nullspace_basis(&qm(&[&[0, 0, 0]])).len(), 3);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = qm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let ns = nullspace_basis(&m);
        assert_eq!(ns.len() + rank(&m), 4);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Ring::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = qm(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &[int(3), int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let s = qm(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&s, &[int(1), int(3)]).unwrap(), None);
    }

    fn p(v: Param) -> ParamPoly {
        ParamPoly::param(v)
    }

    #[test]
    fn det_examples() {
        let mu0 = p(Param::Mu(0));
        let m = SparseMatrix::from_dense(vec![vec![mu0.clone()]]);
        assert_eq!(det(&m).unwrap(), mu0);

        let t = p(Param::LineT);
        let one = ParamPoly::rational(int(1));
        let m = SparseMatrix::from_dense(vec![vec![one.clone(), t.clone()], vec![t.clone(), one.clone()]]);
        assert_eq!(det(&m).unwrap(), &one - &(&t * &t));

        let ones = SparseMatrix::from_dense(vec![vec![one.clone(); 3]; 3]);
        assert!(det(&ones).unwrap().is_zero());
        assert!(det(&SparseMatrix::<ParamPoly>::new(2, 3)).is_err());
    }

    #[test]
    fn bareiss_agrees_with_minor_expansion() {
        let a = |i, j| p(Param::Entry(i, j));
        let m = SparseMatrix::from_dense(
            (0..4).map(|i| (0..4).map(|j| if (i + j) % 3 == 0 { ParamPoly::zero() } else { a(i, j) }).collect()).collect(),
        );
        assert_eq!(det(&m).unwrap(), det_by_minors(&m).unwrap());
    }
}
