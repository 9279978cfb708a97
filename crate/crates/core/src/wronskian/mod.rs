//! Wronskian differential polynomials and the canonical basis of the space
//! of differentially homogeneous polynomials of degree `d`.

mod formal;

pub use formal::{
    build_formal_wronskian, expand_combination, is_triangular, nilpotent_shift, reduce_to_triangular,
    verify_wedge_identity,
};

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dpoly::{matrix_action, span_rank, DiffPoly, DpolyError, UniPoly};
use crate::exact::{binomial, det_by_minors, ParamPoly, Rational, Ring, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WronskianError {
    #[error("a Wronskian needs at least one column")]
    EmptySpec,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("variable x{index} out of range for N = {n}")]
    VarIndex { index: usize, n: usize },
    #[error("exponent {value} exceeds d - 1 = {max}")]
    AlphaOutOfRange { value: usize, max: usize },
    #[error("matrix is not nilpotent of index at most {0}")]
    NotNilpotent(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("theta must be nonzero")]
    ZeroTheta,
    #[error("malformed basis manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Poly(#[from] DpolyError),
}

/// The line `(R_1(t)X_{n_1}, …, R_d(t)X_{n_d})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskSpec {
    pub entries: Vec<(UniPoly, usize)>,
}

impl WronskSpec {
    /// Columns `t^{a_j} X_{n_j}`.
    pub fn monomial(columns: &[(usize, usize)]) -> Self {
        WronskSpec {
            entries: columns
                .iter()
                .map(|&(a, var)| (UniPoly::power(a), var))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }
}

/// The `d×d` matrix with entry `(r, k) = Σ_j C(r,j) R_k^{(r-j)}(0) X_{n_k}^{(j)}`.
pub fn wronskian_matrix(spec: &WronskSpec, n: usize) -> Result<SparseMatrix<DiffPoly>, WronskianError> {
    let d = spec.degree();
    if d == 0 {
        return Err(WronskianError::EmptySpec);
    }
    let mut m = SparseMatrix::new(d, d);
    for (k, (r_k, var)) in spec.entries.iter().enumerate() {
        if *var > n {
            return Err(WronskianError::VarIndex { index: *var, n });
        }
        let ders: Vec<ParamPoly> = (0..d).map(|i| r_k.derivative_at_zero(i)).collect();
        for r in 0..d {
            let mut entry = DiffPoly::zero(n);
            for j in 0..=r {
                let c = &ders[r - j];
                if c.is_zero() {
                    continue;
                }
                let c = c.scale(&binomial(r as u64, j as u64));
                entry = entry + DiffPoly::var(n, *var, j as u32).scale_param(&c);
            }
            m.set(r, k, entry);
        }
    }
    Ok(m)
}

/// `Wronsk(R_1X_{n_1}, …, R_dX_{n_d})`: the determinant of [`wronskian_matrix`].
pub fn build_wronskian(spec: &WronskSpec, n: usize) -> Result<DiffPoly, WronskianError> {
    let m = wronskian_matrix(spec, n)?;
    let det = det_by_minors(&m).expect("Wronskian matrices are square");
    // the division-free expansion seeds its accumulator with an ambient-less one
    Ok(det.with_ambient(n))
}

/// The data `(m, α)` indexing one canonical basis element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalDatum {
    /// Multiplicity of each variable, `|m| = d`.
    pub m: Vec<usize>,
    /// For each `i` with `m_i > 0` (in increasing `i`), a strictly increasing
    /// sequence of `m_i` exponents bounded by the running total of `m`.
    pub alphas: Vec<Vec<usize>>,
}

impl CanonicalDatum {
    pub fn degree(&self) -> usize {
        self.m.iter().sum()
    }

    pub fn flat_alpha(&self) -> Vec<usize> {
        self.alphas.iter().flatten().copied().collect()
    }

    /// Variable of each column, in column order.
    pub fn columns(&self) -> Vec<usize> {
        self.m
            .iter()
            .enumerate()
            .flat_map(|(i, &mi)| std::iter::repeat_n(i, mi))
            .collect()
    }

    pub fn spec(&self) -> WronskSpec {
        let cols: Vec<(usize, usize)> = self
            .flat_alpha()
            .into_iter()
            .zip(self.columns())
            .collect();
        WronskSpec::monomial(&cols)
    }

    /// Rebuilds a datum from `m` and the flattened exponents, checking the constraints.
    pub fn from_flat(m: Vec<usize>, flat: &[usize]) -> Option<Self> {
        let mut alphas = Vec::new();
        let (mut pos, mut total) = (0, 0);
        for &mi in m.iter().filter(|&&mi| mi > 0) {
            total += mi;
            let block = flat.get(pos..pos + mi)?.to_vec();
            if block.windows(2).any(|w| w[0] >= w[1]) || block[mi - 1] >= total {
                return None;
            }
            alphas.push(block);
            pos += mi;
        }
        (pos == flat.len()).then_some(CanonicalDatum { m, alphas })
    }
}

/// Compositions of `d` into `parts` parts, in increasing lexicographic order.
pub fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=d {
            prefix.push(first);
            rec(d - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, parts, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing sequences of length `len` with entries `< bound`, in lex order.
fn increasing_sequences(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, start: usize, bound: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in start..bound {
            prefix.push(v);
            rec(len, v + 1, bound, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, bound, &mut Vec::new(), &mut out);
    out
}

/// All data, lexicographic in `m` and then in the flattened `α`.
pub fn canonical_data(n: usize, d: usize) -> Vec<CanonicalDatum> {
    let mut out = Vec::new();
    for m in compositions(d, n + 1) {
        let mut partial: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut total = 0;
        for &mi in m.iter().filter(|&&mi| mi > 0) {
            total += mi;
            let choices = increasing_sequences(mi, total);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|alphas| CanonicalDatum {
            m: m.clone(),
            alphas,
        }));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub datum: CanonicalDatum,
    pub poly: DiffPoly,
}

impl BasisElement {
    pub fn to_json(&self) -> Value {
        let g = self.poly.gradings().ok();
        json!({
            "m": self.datum.m,
            "alpha": self.datum.flat_alpha(),
            "order": g.map(|g| g.order),
            "weight": g.and_then(|g| g.weight),
            "poly": self.poly.to_json().expect("canonical basis elements have rational coefficients"),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, WronskianError> {
        let bad = |s: &str| WronskianError::Manifest(s.to_string());
        let list = |key: &str| -> Result<Vec<usize>, WronskianError> {
            v.get(key)
                .and_then(Value::as_array)
                .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
                .ok_or_else(|| bad(key))
        };
        let datum = CanonicalDatum::from_flat(list("m")?, &list("alpha")?)
            .ok_or_else(|| bad("datum violates the canonical constraints"))?;
        let poly = DiffPoly::from_json(v.get("poly").ok_or_else(|| bad("poly"))?)?;
        Ok(BasisElement { datum, poly })
    }
}

/// The `(N+1)^d` Wronskians `W_P`, in the order of [`canonical_data`].
pub fn enumerate_canonical_basis(n: usize, d: usize) -> Result<Vec<BasisElement>, WronskianError> {
    if d == 0 {
        return Err(WronskianError::ZeroDegree);
    }
    canonical_data(n, d)
        .into_par_iter()
        .map(|datum| {
            let poly = build_wronskian(&datum.spec(), n)?;
            Ok(BasisElement { datum, poly })
        })
        .collect()
}

/// JSON manifest of a basis, in enumeration order.
pub fn manifest_json(basis: &[BasisElement]) -> Value {
    Value::Array(basis.iter().map(BasisElement::to_json).collect())
}

pub fn manifest_from_json(v: &Value) -> Result<Vec<BasisElement>, WronskianError> {
    v.as_array()
        .ok_or_else(|| WronskianError::Manifest("expected an array".into()))?
        .iter()
        .map(BasisElement::from_json)
        .collect()
}

/// `Wronsk(X_{n_1}, (θ+t)X_{n_2}, …, (θ+t)^{d-1}X_{n_d})` for every `n ∈ {0..N}^d`.
pub fn theta_family(n: usize, d: usize, theta: &Rational) -> Result<Vec<DiffPoly>, WronskianError> {
    if Ring::is_zero(theta) {
        return Err(WronskianError::ZeroTheta);
    }
    if d == 0 {
        return Err(WronskianError::ZeroDegree);
    }
    let base = UniPoly::from_rationals(&[theta.clone(), Ring::one()]);
    let powers: Vec<UniPoly> = (0..d as u32).map(|e| base.pow(e)).collect();
    let total = (n + 1).pow(d as u32);
    (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut entries = Vec::with_capacity(d);
            for p in &powers {
                entries.push((p.clone(), code % (n + 1)));
                code /= n + 1;
            }
            build_wronskian(&WronskSpec { entries }, n)
        })
        .collect()
}

/// Rank of the θ-family. Only computed, never compared against a claimed value.
pub fn theta_family_rank(n: usize, d: usize, theta: &Rational) -> Result<usize, WronskianError> {
    Ok(span_rank(&theta_family(n, d, theta)?))
}

/// Whether `A·W` lies in the span of `basis` for every `W` in it. The
/// basis is assumed linearly independent.
pub fn is_gl_stable(basis: &[DiffPoly], a: &SparseMatrix<ParamPoly>) -> Result<bool, WronskianError> {
    let images = basis
        .par_iter()
        .map(|w| matrix_action(a, w))
        .collect::<Result<Vec<_>, DpolyError>>()?;
    let mut all = basis.to_vec();
    all.extend(images);
    Ok(span_rank(&all) == basis.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::{is_diff_homogeneous, parse};
    use crate::exact::int;

    fn x(n: usize, i: usize, k: u32) -> DiffPoly {
        DiffPoly::var(n, i, k)
    }

    #[test]
    fn small_wronskians() {
        let w = build_wronskian(&WronskSpec::monomial(&[(0, 0)]), 0).unwrap();
        assert_eq!(w, x(0, 0, 0));
        let w = build_wronskian(&WronskSpec::monomial(&[(0, 0), (1, 0)]), 0).unwrap();
        assert_eq!(w, x(0, 0, 0).pow(2));
        let w = build_wronskian(&WronskSpec::monomial(&[(0, 0), (0, 1)]), 1).unwrap();
        assert_eq!(w, parse("x0*x1[1] - x1*x0[1]", 1).unwrap());
    }

    #[test]
    fn six_by_six_example_matrix() {
        let spec = WronskSpec::monomial(&[(0, 0), (1, 0), (1, 1), (3, 1), (0, 2), (4, 2)]);
        let m = wronskian_matrix(&spec, 2).unwrap();
        let e = |r: usize, c: usize| m.entry(r - 1, c - 1);
        assert_eq!(e(4, 4), x(2, 1, 0).scale(&int(6)));
        assert_eq!(e(5, 6), x(2, 2, 0).scale(&int(24)));
        // the rest of column 4 and 6 and a few others
        assert_eq!(e(5, 4), x(2, 1, 1).scale(&int(24)));
        assert_eq!(e(6, 4), x(2, 1, 2).scale(&int(60)));
        assert_eq!(e(6, 6), x(2, 2, 1).scale(&int(120)));
        assert_eq!(e(3, 2), x(2, 0, 1).scale(&int(2)));
        assert!(e(1, 2).is_zero() && e(3, 4).is_zero() && e(4, 6).is_zero());
        assert_eq!(e(6, 5), x(2, 2, 5));
        let w = build_wronskian(&spec, 2).unwrap();
        assert_eq!(is_diff_homogeneous(&w).unwrap().degree, Some(6));
    }

    #[test]
    fn canonical_data_counts() {
        for n in 0..3 {
            for d in 1..5 {
                assert_eq!(canonical_data(n, d).len(), (n + 1).pow(d as u32));
            }
        }
    }

    #[test]
    fn basis_n1_d2() {
        let basis = enumerate_canonical_basis(1, 2).unwrap();
        let polys: Vec<String> = basis.iter().map(|b| b.poly.to_string()).collect();
        assert_eq!(polys, vec!["x1^2", "-x0[1]*x1 + x0*x1[1]", "x0*x1", "x0^2"]);
        assert_eq!(basis[3].datum.flat_alpha(), vec![0, 1]);
    }

    #[test]
    fn basis_n0_d2_is_single_square() {
        let basis = enumerate_canonical_basis(0, 2).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].poly, x(0, 0, 0).pow(2));
        assert_eq!(basis[0].datum.m, vec![2]);
    }

    #[test]
    fn six_dimensional_example_is_in_basis() {
        let datum = CanonicalDatum {
            m: vec![2, 2, 2],
            alphas: vec![vec![0, 1], vec![1, 3], vec![0, 4]],
        };
        assert!(canonical_data(2, 6).contains(&datum));
    }

    #[test]
    fn manifest_round_trip() {
        let basis = enumerate_canonical_basis(1, 3).unwrap();
        let v = manifest_json(&basis);
        assert_eq!(manifest_from_json(&v).unwrap(), basis);
        assert_eq!(v[0]["alpha"], json!([0, 1, 2]));
    }

    #[test]
    fn theta_rejects_zero_and_d1_is_full() {
        assert_eq!(theta_family_rank(1, 2, &int(0)), Err(WronskianError::ZeroTheta));
        assert_eq!(theta_family_rank(2, 1, &int(1)).unwrap(), 3);
    }

    #[test]
    fn datum_from_flat_checks_constraints() {
        assert!(CanonicalDatum::from_flat(vec![1, 1], &[0, 1]).is_some());
        assert!(CanonicalDatum::from_flat(vec![1, 1], &[1, 0]).is_none());
        assert!(CanonicalDatum::from_flat(vec![2], &[1, 1]).is_none());
        assert!(CanonicalDatum::from_flat(vec![2], &[0]).is_none());
    }

    #[test]
    fn basis_is_stable_under_random_matrices() {
        use crate::sampling::{as_param_matrix, random_invertible, rng};
        let mut r = rng(11);
        let basis: Vec<DiffPoly> = enumerate_canonical_basis(1, 2).unwrap().into_iter().map(|e| e.poly).collect();
        for _ in 0..3 {
            let a = as_param_matrix(&random_invertible(&mut r, 2));
            assert!(is_gl_stable(&basis, &a).unwrap());
        }
        // a strict subfamily is not stable
        let a = as_param_matrix(&random_invertible(&mut r, 2));
        assert!(!is_gl_stable(&basis[..1], &a).unwrap());
    }
}
