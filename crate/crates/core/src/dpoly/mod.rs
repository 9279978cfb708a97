//! Differential polynomials in `X_0..X_N` and their formal derivatives.
//!
//! Coefficients are [`ParamPoly`], so the same type carries rational
//! polynomials and their images under symbolic substitutions (the
//! `Q`-action, `GL` action with symbolic entries, ...).

mod action;
mod text;
mod span;

pub use action::{
    alpha_j_substitution, is_diff_homogeneous, matrix_action, q_action, Homogeneity, UniPoly,
};
pub use span::{coefficient_matrix, express_in_span, span_rank};
pub use text::parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::exact::{Monomial, Param, ParamPoly, Poly, Rational, Ring};

/// The variable `X_var^{(order)}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarRef {
    pub var: usize,
    pub order: u32,
}

impl VarRef {
    pub fn new(var: usize, order: u32) -> Self {
        VarRef { var, order }
    }
}

/// `X_0^{(∞)} > … > X_0^{(0)} > X_1^{(∞)} > … > X_N^{(0)}`.
impl Ord for VarRef {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .var
            .cmp(&self.var)
            .then(self.order.cmp(&other.order))
    }
}

impl PartialOrd for VarRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "x{}[{}]", self.var, self.order)
        }
    }
}

pub type DiffMonomial = Monomial<VarRef>;

/// `Σ k·e` over the factors `(X^{(k)})^e`.
pub fn monomial_weight(m: &DiffMonomial) -> u32 {
    m.factors().iter().map(|(v, e)| v.order * e).sum()
}

/// Largest derivative order in the support, 0 for the empty monomial.
pub fn monomial_order(m: &DiffMonomial) -> u32 {
    m.factors().iter().map(|(v, _)| v.order).max().unwrap_or(0)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable x{index} out of range for N = {n}")]
    VarIndex { index: usize, n: usize },
    #[error("the zero polynomial has no degree, weight or order")]
    ZeroPolynomial,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    SizeMismatch { expected: usize, rows: usize, cols: usize },
    #[error("coefficients must be rational numbers")]
    ParametricCoefficient,
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// A differential polynomial over the ambient variables `X_0..X_n`.
///
/// Equality compares terms only; the ambient `n` bounds which variables may
/// appear but does not distinguish polynomials.
#[derive(Clone)]
pub struct DiffPoly {
    n: usize,
    poly: Poly<VarRef, ParamPoly>,
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for DiffPoly {}

impl std::hash::Hash for DiffPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.poly.hash(state);
    }
}

/// Degree and weight are `None` when the polynomial is not homogeneous
/// (resp. not isobaric).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gradings {
    pub degree: Option<u32>,
    pub weight: Option<u32>,
    pub order: u32,
}

impl DiffPoly {
    pub fn zero(n: usize) -> Self {
        DiffPoly { n, poly: Poly::zero() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        DiffPoly {
            n,
            poly: Poly::constant(ParamPoly::rational(c)),
        }
    }

    /// `X_var^{(order)}`; panics when `var > n`.
    pub fn var(n: usize, var: usize, order: u32) -> Self {
        assert!(var <= n, "variable x{var} out of range for N = {n}");
        DiffPoly {
            n,
            poly: Poly::var(VarRef::new(var, order)),
        }
    }

    pub fn from_poly(n: usize, poly: Poly<VarRef, ParamPoly>) -> Self {
        debug_assert!(poly.variables().iter().all(|v| v.var <= n));
        DiffPoly { n, poly }
    }

    pub fn from_terms<I: IntoIterator<Item = (DiffMonomial, Rational)>>(n: usize, terms: I) -> Self {
        DiffPoly::from_poly(
            n,
            Poly::from_terms(terms.into_iter().map(|(m, c)| (m, ParamPoly::rational(c)))),
        )
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly<VarRef, ParamPoly> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// Terms in decreasing canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &ParamPoly)> + '_ {
        self.poly.terms().rev()
    }

    pub fn leading_monomial(&self) -> Option<&DiffMonomial> {
        self.poly.leading_term().map(|(m, _)| m)
    }

    /// Same polynomial viewed in a (larger) ambient space.
    pub fn with_ambient(&self, n: usize) -> Self {
        DiffPoly::from_poly(n, self.poly.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DiffPoly {
            n: self.n,
            poly: self.poly.scale(&ParamPoly::rational(c.clone())),
        }
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        DiffPoly {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        DiffPoly {
            n: self.n,
            poly: self.poly.pow(e),
        }
    }

    /// True when every coefficient is a rational number.
    pub fn is_rational(&self) -> bool {
        self.poly.terms().all(|(_, c)| c.as_rational().is_some())
    }

    /// Coefficients as rationals, or `None` if a parameter occurs.
    pub fn rational_terms(&self) -> Option<Vec<(DiffMonomial, Rational)>> {
        self.terms()
            .map(|(m, c)| c.as_rational().map(|r| (m.clone(), r)))
            .collect()
    }

    /// Substitutes a value for one parameter in every coefficient.
    pub fn eval_param(&self, p: &Param, value: &ParamPoly) -> Self {
        let poly = Poly::from_terms(self.poly.terms().map(|(m, c)| {
            let c = c.substitute(|v| {
                if v == p {
                    value.clone()
                } else {
                    ParamPoly::param(v.clone())
                }
            });
            (m.clone(), c)
        }));
        DiffPoly { n: self.n, poly }
    }

    pub fn gradings(&self) -> Result<Gradings, DpolyError> {
        if self.is_zero() {
            return Err(DpolyError::ZeroPolynomial);
        }
        let uniform = |f: &dyn Fn(&DiffMonomial) -> u32| {
            let mut vals = self.poly.terms().map(|(m, _)| f(m));
            let first = vals.next().unwrap();
            vals.all(|v| v == first).then_some(first)
        };
        Ok(Gradings {
            degree: uniform(&|m: &DiffMonomial| m.degree()),
            weight: uniform(&monomial_weight),
            order: self.order(),
        })
    }

    /// Largest derivative order present; 0 for constants and for zero.
    pub fn order(&self) -> u32 {
        self.poly.terms().map(|(m, _)| monomial_order(m)).max().unwrap_or(0)
    }

    /// Replaces each variable by a differential polynomial.
    pub fn substitute<F: FnMut(&VarRef) -> DiffPoly>(&self, n: usize, mut image: F) -> DiffPoly {
        DiffPoly {
            n,
            poly: self.poly.substitute(|v| image(v).poly),
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        DiffPoly {
            n: self.n.max(rhs.n),
            poly: &self.poly + &rhs.poly,
        }
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: DiffPoly) -> DiffPoly {
        DiffPoly {
            n: self.n.max(rhs.n),
            poly: self.poly + rhs.poly,
        }
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        DiffPoly {
            n: self.n.max(rhs.n),
            poly: &self.poly - &rhs.poly,
        }
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: DiffPoly) -> DiffPoly {
        DiffPoly {
            n: self.n.max(rhs.n),
            poly: self.poly - rhs.poly,
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        DiffPoly {
            n: self.n.max(rhs.n),
            poly: &self.poly * &rhs.poly,
        }
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            n: self.n,
            poly: -&self.poly,
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl Ring for DiffPoly {
    fn zero() -> Self {
        DiffPoly::zero(0)
    }

    fn one() -> Self {
        DiffPoly::constant(0, Ring::one())
    }

    fn from_int(k: i64) -> Self {
        DiffPoly::constant(0, Ring::from_int(k))
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.n = self.n.max(other.n);
        self.poly.add_assign_ref(&other.poly);
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly[N={}]({})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn x(i: usize, k: u32) -> DiffPoly {
        DiffPoly::var(2, i, k)
    }

    #[test]
    fn canonical_variable_order() {
        let mut vars = vec![
            VarRef::new(1, 0),
            VarRef::new(0, 0),
            VarRef::new(0, 3),
            VarRef::new(2, 5),
            VarRef::new(1, 2),
        ];
        vars.sort();
        vars.reverse();
        let expect = vec![
            VarRef::new(0, 3),
            VarRef::new(0, 0),
            VarRef::new(1, 2),
            VarRef::new(1, 0),
            VarRef::new(2, 5),
        ];
        assert_eq!(vars, expect);
    }

    #[test]
    fn gradings_examples() {
        let g = x(0, 0).pow(2).gradings().unwrap();
        assert_eq!(g, Gradings { degree: Some(2), weight: Some(0), order: 0 });

        let w = &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1));
        let g = w.gradings().unwrap();
        assert_eq!(g, Gradings { degree: Some(2), weight: Some(1), order: 1 });

        let g = (&x(0, 0) + &x(0, 1)).gradings().unwrap();
        assert_eq!(g, Gradings { degree: Some(1), weight: None, order: 1 });

        let g = (&x(0, 0) + &x(0, 0).pow(2)).gradings().unwrap();
        assert_eq!(g.degree, None);

        assert_eq!(DiffPoly::zero(1).gradings(), Err(DpolyError::ZeroPolynomial));
    }

    #[test]
    fn weight_and_order_of_monomials() {
        let m = Monomial::from_factors([(VarRef::new(0, 2), 3), (VarRef::new(1, 1), 1)]);
        assert_eq!(monomial_weight(&m), 7);
        assert_eq!(monomial_order(&m), 2);
        assert_eq!(monomial_order(&DiffMonomial::one()), 0);
    }

    #[test]
    fn eval_param_specializes_coefficients() {
        let t = ParamPoly::param(Param::T);
        let p = x(0, 1).scale_param(&t) + x(0, 0);
        let at_zero = p.eval_param(&Param::T, &ParamPoly::zero());
        assert_eq!(at_zero, x(0, 0));
        let at_two = p.eval_param(&Param::T, &ParamPoly::rational(int(2)));
        assert_eq!(at_two, &x(0, 1).scale(&int(2)) + &x(0, 0));
    }
}
