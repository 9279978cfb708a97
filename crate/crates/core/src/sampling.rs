//! Seeded random rational data for reproducible spot checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{det, rat, ParamPoly, Rational, Ring, SparseMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 4` and `1 ≤ q ≤ 3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_rational(rng)).collect()
}

/// A random invertible `size×size` matrix with small rational entries,
/// redrawn until its determinant is nonzero.
pub fn random_invertible<R: Rng>(rng: &mut R, size: usize) -> SparseMatrix<Rational> {
    loop {
        let rows: Vec<Vec<Rational>> = (0..size).map(|_| random_vector(rng, size)).collect();
        let m = SparseMatrix::from_dense(rows);
        if !Ring::is_zero(&det(&m).expect("square")) {
            return m;
        }
    }
}

/// The same matrix with entries viewed as constant parametric coefficients.
pub fn as_param_matrix(m: &SparseMatrix<Rational>) -> SparseMatrix<ParamPoly> {
    let mut out = SparseMatrix::new(m.rows(), m.cols());
    for ((i, j), v) in m.entries() {
        out.set(*i, *j, ParamPoly::rational(v.clone()));
    }
    out
}
