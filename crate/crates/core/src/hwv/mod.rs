//! Highest weight vectors of `V_d^{(k)}` and the tensor model behind them.
//!
//! `D_T` is the product over the columns of `T` of the determinants
//! `det(X_b^{(i_a)})`. For semistandard `T` with entries in `0..=k` these form
//! a basis of the `λ`-highest weight vectors. On the tensor side,
//! `E = (ℚ^{k+1})^{⊗d}` carries the right `Σ_d` action, the Young symmetrizer
//! `c_λ = c_{T_can(λ)}` and the operators `J^{(ℓ)}`; `π(e_T) = D_T` and
//! `e(D_T) = e_T·c_λ` connect the two sides.

mod kernel;
mod tensor;

pub use kernel::{
    j_operator_matrix, kernel_basis_full, kernel_dim_for_tableau, kernel_dim_full, kernel_dim_isotypic,
    symmetrizer_image, symmetrizer_image_dim,
};
pub use tensor::{
    alpha_j_tensor, basis_indices, j_ell, tensor_algebra_action, tensor_of_tableau, tensor_sigma_action, Tensor,
};

use thiserror::Error;

use crate::dpoly::{alpha_j_substitution, express_in_span, matrix_action, span_rank, DiffPoly, DpolyError};
use crate::exact::{det_by_minors, factorial, int, Param, ParamPoly, Rational, Ring, SparseMatrix};
use crate::tableaux::{
    canonical_tableau, semistandard_tableaux, young_symmetrizer, GroupAlgebraElem, Partition, Tableau, TableauxError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HwvError {
    #[error("{rows} rows do not fit in {} variables", .n + 1)]
    TooTall { rows: usize, n: usize },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("entry {value} exceeds k = {k}")]
    EntryOutOfRange { value: usize, k: usize },
    #[error("ℓ = {ell} is outside 1..={d}")]
    EllOutOfRange { ell: usize, d: usize },
    #[error("polynomial is not in the span of the D_T")]
    NotInSpan,
    #[error(transparent)]
    Tableaux(#[from] TableauxError),
    #[error(transparent)]
    Poly(#[from] DpolyError),
}

/// `det(X_b^{(i_a)})_{0≤a,b≤r}` for `seq = (i_0, …, i_r)`.
pub fn column_det(seq: &[usize], n: usize) -> Result<DiffPoly, HwvError> {
    if seq.len() > n + 1 {
        return Err(HwvError::TooTall { rows: seq.len(), n });
    }
    let r = seq.len();
    let mut m = SparseMatrix::new(r, r);
    for (a, &i) in seq.iter().enumerate() {
        for b in 0..r {
            m.set(a, b, DiffPoly::var(n, b, i as u32));
        }
    }
    let det = det_by_minors(&m).expect("square");
    Ok(if r == 0 { DiffPoly::constant(n, int(1)) } else { det.with_ambient(n) })
}

/// `D_T`: the product of the column determinants of `T`.
pub fn d_t(t: &Tableau, n: usize) -> Result<DiffPoly, HwvError> {
    let rows = t.shape().len();
    if rows > n + 1 {
        return Err(HwvError::TooTall { rows, n });
    }
    let mut acc = DiffPoly::constant(n, int(1));
    for col in t.columns() {
        acc = &acc * &column_det(&col, n)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc.with_ambient(n))
}

#[derive(Clone, Debug)]
pub struct HwvBasis {
    /// `(T, D_T)` over semistandard `T`, in the order of
    /// [`semistandard_tableaux`].
    pub elements: Vec<(Tableau, DiffPoly)>,
    /// Set when `λ` has more than `N+1` parts, in which case the space is zero.
    pub diagnostic: Option<String>,
}

impl HwvBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polys(&self) -> Vec<DiffPoly> {
        self.elements.iter().map(|(_, p)| p.clone()).collect()
    }
}

/// `D_T` for every semistandard `T` of shape `λ` with entries in `0..=k`.
pub fn hwv_basis(shape: &Partition, k: usize, n: usize) -> HwvBasis {
    if shape.len() > n + 1 {
        return HwvBasis {
            elements: Vec::new(),
            diagnostic: Some(format!(
                "shape {shape} has {} rows but there are only {} variables; D_λ^({k}) is zero",
                shape.len(),
                n + 1
            )),
        };
    }
    let elements = semistandard_tableaux(shape, 0, k)
        .into_iter()
        .map(|t| {
            let p = d_t(&t, n).expect("height checked");
            (t, p)
        })
        .collect();
    HwvBasis {
        elements,
        diagnostic: None,
    }
}

/// Whether the `D_T` of [`hwv_basis`] are linearly independent.
pub fn hwv_basis_independent(basis: &HwvBasis) -> bool {
    span_rank(&basis.polys()) == basis.len()
}

fn check_height(shape: &Partition, n: usize) -> Result<(), HwvError> {
    if shape.len() > n + 1 {
        return Err(HwvError::TooTall { rows: shape.len(), n });
    }
    Ok(())
}

/// `π`: the linear map `e_{i_1}⊗…⊗e_{i_d} ↦ D_T`, where `T` has shape `λ`
/// and row-major reading `(i_1, …, i_d)`.
pub fn pi(t: &Tensor, shape: &Partition, n: usize) -> Result<DiffPoly, HwvError> {
    check_height(shape, n)?;
    if shape.size() != t.d() {
        return Err(HwvError::SizeMismatch {
            expected: shape.size(),
            got: t.d(),
        });
    }
    let mut acc = DiffPoly::zero(n);
    for (index, c) in t.terms() {
        let tab = Tableau::new(shape.clone(), index.clone())?;
        acc = acc + d_t(&tab, n)?.scale(c);
    }
    Ok(acc)
}

/// `t ↦ t·c_λ`.
pub fn symmetrizer_projection(t: &Tensor, shape: &Partition) -> Result<Tensor, HwvError> {
    if shape.size() != t.d() {
        return Err(HwvError::SizeMismatch {
            expected: shape.size(),
            got: t.d(),
        });
    }
    let c = young_symmetrizer(&canonical_tableau(shape))?;
    tensor_algebra_action(t, &c)
}

/// The scalar `m` with `c_λ² = m·c_λ`, or `None` if `c_λ²` is not a multiple
/// of `c_λ`.
pub fn almost_idempotent_factor(shape: &Partition) -> Result<Option<Rational>, HwvError> {
    let c = young_symmetrizer(&canonical_tableau(shape))?;
    let sq = c.mul(&c)?;
    Ok(scalar_multiple(&sq, &c))
}

fn scalar_multiple(a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> Option<Rational> {
    let (p, c) = b.terms().next()?;
    let m = a.coefficient(p) / c;
    (b.scale(&m) == *a).then_some(m)
}

/// Writes `D_T` in the semistandard basis of the same shape with entries in
/// `0..=k`.
pub fn straighten(t: &Tableau, k: usize, n: usize) -> Result<Vec<(Rational, Tableau)>, HwvError> {
    if let Some(&value) = t.filling().iter().find(|&&v| v > k) {
        return Err(HwvError::EntryOutOfRange { value, k });
    }
    let target = d_t(t, n)?;
    let basis = hwv_basis(t.shape(), k, n);
    let coeffs = express_in_span(&basis.polys(), &target).ok_or(HwvError::NotInSpan)?;
    Ok(coeffs
        .into_iter()
        .zip(basis.elements)
        .filter(|(c, _)| !Ring::is_zero(c))
        .map(|(c, (s, _))| (c, s))
        .collect())
}

/// `e`: `Σ c_T D_T ↦ Σ c_T e_T·c_λ`, computed through the semistandard basis.
pub fn e_iso(p: &DiffPoly, shape: &Partition, k: usize) -> Result<Tensor, HwvError> {
    let n = p.ambient();
    check_height(shape, n)?;
    let basis = hwv_basis(shape, k, n);
    let coeffs = express_in_span(&basis.polys(), p).ok_or(HwvError::NotInSpan)?;
    let c = young_symmetrizer(&canonical_tableau(shape))?;
    let mut acc = Tensor::zero(shape.size(), k);
    for (a, (t, _)) in coeffs.iter().zip(&basis.elements) {
        if Ring::is_zero(a) {
            continue;
        }
        let img = tensor_algebra_action(&tensor_of_tableau(t, k)?, &c)?;
        acc = acc.add(&img.scale(a))?;
    }
    Ok(acc)
}

/// Rank of `e` applied to the semistandard basis; equal to the basis size
/// exactly when `e` is injective.
pub fn e_iso_image_dim(shape: &Partition, k: usize, n: usize) -> Result<usize, HwvError> {
    check_height(shape, n)?;
    let size = (k + 1).pow(shape.size() as u32);
    let rows = hwv_basis(shape, k, n)
        .elements
        .iter()
        .map(|(_, p)| Ok(e_iso(p, shape, k)?.coordinates()))
        .collect::<Result<Vec<_>, HwvError>>()?;
    Ok(crate::exact::rank(&SparseMatrix::from_rows(rows, size)))
}

/// `diag(x_0, …, x_N)` with symbolic entries.
pub fn torus_matrix(n: usize) -> SparseMatrix<ParamPoly> {
    let mut m = SparseMatrix::new(n + 1, n + 1);
    for j in 0..=n {
        m.set(j, j, ParamPoly::param(Param::Diag(j)));
    }
    m
}

/// `I + t·E_{qp}`: under [`matrix_action`] this substitutes `X_q ← X_q + t·X_p`.
pub fn unipotent_matrix(n: usize, p: usize, q: usize) -> SparseMatrix<ParamPoly> {
    let mut m = SparseMatrix::identity(n + 1);
    m.set(q, p, ParamPoly::param(Param::LineT));
    m
}

/// `diag(x)·D_T = Π_j x_j^{λ_j}·D_T`.
pub fn check_weight(t: &Tableau, n: usize) -> Result<bool, HwvError> {
    let p = d_t(t, n)?;
    let mut w = ParamPoly::one();
    for (j, &len) in t.shape().parts().iter().enumerate() {
        w = &w * &ParamPoly::param(Param::Diag(j)).pow(len as u32);
    }
    Ok(matrix_action(&torus_matrix(n), &p)? == p.scale_param(&w))
}

/// `D_T` is fixed by `I + t·E_{qp}` for every `p < q ≤ N`.
pub fn check_unipotent_invariance(t: &Tableau, n: usize) -> Result<bool, HwvError> {
    let p = d_t(t, n)?;
    for q in 1..=n {
        for r in 0..q {
            if matrix_action(&unipotent_matrix(n, r, q), &p)? != p {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `dim{P ∈ 𝒟_λ^{(k)} : (α Id + J)·P = α^d P for all α}`, solved on the
/// polynomial side.
pub fn iso_solution_dim(shape: &Partition, k: usize, n: usize) -> Result<usize, HwvError> {
    check_height(shape, n)?;
    let d = shape.size() as u32;
    let alpha_d = ParamPoly::param(Param::Alpha).pow(d);
    let basis = hwv_basis(shape, k, n);
    let defects: Vec<DiffPoly> = basis
        .elements
        .iter()
        .map(|(_, p)| alpha_j_substitution(p) - p.scale_param(&alpha_d))
        .collect();
    Ok(basis.len() - span_rank(&defects))
}

/// `(α Id + J)·D_T = Σ_ℓ α^{d-ℓ} π(J^{(ℓ)} e_T)/ℓ! + α^d D_T` with symbolic `α`.
pub fn check_alpha_expansion(t: &Tableau, k: usize, n: usize) -> Result<bool, HwvError> {
    let shape = t.shape();
    let d = shape.size();
    let e = tensor_of_tableau(t, k)?;
    let p = d_t(t, n)?;
    let alpha = ParamPoly::param(Param::Alpha);
    let mut rhs = p.scale_param(&alpha.pow(d as u32));
    for ell in 1..=d {
        let img = j_ell(&e, ell)?.scale(&(int(1) / Rational::from_integer(factorial(ell as u64))));
        rhs = rhs + pi(&img, shape, n)?.scale_param(&alpha.pow((d - ell) as u32));
    }
    Ok(alpha_j_substitution(&p) == rhs)
}
