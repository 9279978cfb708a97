//! The `Q`-action, the decision procedure for differential homogeneity and
//! the `GL_{N+1}` action by change of variables.

use super::{DiffPoly, DpolyError, VarRef};
use crate::exact::{binomial, falling, Param, ParamPoly, Rational, Ring, SparseMatrix};

/// A univariate polynomial `Σ c_j T^j` with parametric coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<ParamPoly>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ParamPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        UniPoly::new(coeffs.iter().cloned().map(ParamPoly::rational).collect())
    }

    /// `T^a`.
    pub fn power(a: usize) -> Self {
        let mut coeffs = vec![ParamPoly::zero(); a + 1];
        coeffs[a] = ParamPoly::one();
        UniPoly { coeffs }
    }

    pub fn constant(c: ParamPoly) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::new(Vec::new());
        }
        let mut out = vec![ParamPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_assign_ref(&(a * b));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::constant(ParamPoly::one()), |acc, _| acc.mul(self))
    }

    /// The `m`-th derivative.
    pub fn derivative(&self, m: usize) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(m)
                .map(|(j, c)| c.scale(&falling(j as u64, m as u64)))
                .collect(),
        )
    }

    /// `R^{(m)}(0) = m!·c_m`.
    pub fn derivative_at_zero(&self, m: usize) -> ParamPoly {
        match self.coeffs.get(m) {
            Some(c) => c.scale(&falling(m as u64, m as u64)),
            None => ParamPoly::zero(),
        }
    }

    /// The polynomial as an element of `ℚ[params]`, with `var` standing for `T`.
    pub fn to_param_poly(&self, var: Param) -> ParamPoly {
        let t = ParamPoly::param(var);
        let mut acc = ParamPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &t) + c;
        }
        acc
    }
}

/// Substitutes `X^{(k)} → Σ_i C(k,i) q_{k-i} X^{(i)}` where `q_m = derivative(m)`
/// is the formal `m`-th derivative of the multiplier.
fn leibniz_substitution<F: FnMut(u32) -> ParamPoly>(p: &DiffPoly, mut derivative: F) -> DiffPoly {
    let order = p.order();
    let ders: Vec<ParamPoly> = (0..=order).map(&mut derivative).collect();
    let n = p.ambient();
    p.substitute(n, |v: &VarRef| {
        let mut img = DiffPoly::zero(n);
        for i in 0..=v.order {
            let c = &ders[(v.order - i) as usize];
            if c.is_zero() {
                continue;
            }
            let c = c.scale(&binomial(v.order as u64, i as u64));
            img = img + DiffPoly::var(n, v.var, i).scale_param(&c);
        }
        img
    })
}

/// `P((QX)^{(0)}, (QX)^{(1)}, …)` with `(QX)^{(k)} = Σ C(k,i) Q^{(k-i)}(T) X^{(i)}`;
/// the result carries the formal variable `T` in its coefficients.
pub fn q_action(q: &UniPoly, p: &DiffPoly) -> DiffPoly {
    leibniz_substitution(p, |m| q.derivative(m as usize).to_param_poly(Param::T))
}

/// The substitution `X^{(i)} → αX^{(i)} + iX^{(i-1)}`, i.e. the action of
/// `Q = α + T` evaluated at `T = 0`, with `α` symbolic.
pub fn alpha_j_substitution(p: &DiffPoly) -> DiffPoly {
    leibniz_substitution(p, |m| match m {
        0 => ParamPoly::param(Param::Alpha),
        1 => ParamPoly::one(),
        _ => ParamPoly::zero(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Homogeneity {
    pub homogeneous: bool,
    /// The degree `d`, present exactly when `homogeneous` holds.
    pub degree: Option<u32>,
}

/// Decides whether `Q·p = Q^d·p` for every polynomial `Q`.
///
/// Evaluating the identity at a point `t₀` replaces `Q^{(j)}(t₀)` by `μ_j`;
/// as `Q` and `t₀` vary, `(μ_0, …, μ_K)` covers all of affine space and both
/// sides are polynomial in `μ`, so it suffices to check the identity with
/// symbolic `μ_j`.
pub fn is_diff_homogeneous(p: &DiffPoly) -> Result<Homogeneity, DpolyError> {
    let g = p.gradings()?;
    if !p.is_rational() {
        return Err(DpolyError::ParametricCoefficient);
    }
    let no = Homogeneity {
        homogeneous: false,
        degree: None,
    };
    let Some(d) = g.degree else {
        return Ok(no);
    };
    let lhs = leibniz_substitution(p, |m| ParamPoly::param(Param::Mu(m as usize)));
    let rhs = p.scale_param(&ParamPoly::param(Param::Mu(0)).pow(d));
    Ok(if lhs == rhs {
        Homogeneity {
            homogeneous: true,
            degree: Some(d),
        }
    } else {
        no
    })
}

/// `A·P := P((AX)^{(0)}, (AX)^{(1)}, …)`, i.e. `X_j^{(k)} → Σ_l A_{jl} X_l^{(k)}`.
pub fn matrix_action(a: &SparseMatrix<ParamPoly>, p: &DiffPoly) -> Result<DiffPoly, DpolyError> {
    let n = p.ambient();
    if a.rows() != n + 1 || a.cols() != n + 1 {
        return Err(DpolyError::SizeMismatch {
            expected: n + 1,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut rows: Vec<Vec<(usize, ParamPoly)>> = vec![Vec::new(); n + 1];
    for ((i, j), v) in a.entries() {
        rows[*i].push((*j, v.clone()));
    }
    Ok(p.substitute(n, |v: &VarRef| {
        let mut img = DiffPoly::zero(n);
        for (l, c) in &rows[v.var] {
            img = img + DiffPoly::var(n, *l, v.order).scale_param(c);
        }
        img
    }))
}
