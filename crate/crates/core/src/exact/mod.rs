//! Exact scalars, sparse multivariate polynomials and exact linear algebra.
//!
//! Everything downstream works over the rationals. Symbolic parameters
//! (formal derivatives of `Q`, matrix entries, `α`, `θ`, ...) live in
//! [`ParamPoly`], the polynomial ring `ℚ[params]`.

mod matrix;
mod poly;
mod rational;
mod ring;

pub use matrix::{det, det_by_minors, nullspace_basis, rank, solve, SparseMatrix, SparseVec};
pub use poly::{Monomial, Poly};
pub use rational::{binomial, factorial, falling, int, parse_rational, rat, Rational};
pub use ring::{ExactDiv, Ring};

use std::fmt;

use thiserror::Error;

/// A named formal parameter of [`ParamPoly`].
///
/// The derived ordering is only used to keep term maps canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// The formal variable of `Q ∈ ℂ[T]`.
    T,
    /// The local parameter `t` of a Wronskian line.
    LineT,
    Alpha,
    Theta,
    /// `μ_j`, standing for `Q^{(j)}` evaluated at a point.
    Mu(usize),
    /// Diagonal entry `x_j` of a torus element.
    Diag(usize),
    /// Entry `a_{ij}` of a symbolic matrix.
    Entry(usize, usize),
    Named(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::T => write!(f, "T"),
            Param::LineT => write!(f, "t"),
            Param::Alpha => write!(f, "alpha"),
            Param::Theta => write!(f, "theta"),
            Param::Mu(j) => write!(f, "mu{j}"),
            Param::Diag(j) => write!(f, "x{j}"),
            Param::Entry(i, j) => write!(f, "a{i}_{j}"),
            Param::Named(s) => write!(f, "{s}"),
        }
    }
}

/// Polynomial in named parameters with rational coefficients.
pub type ParamPoly = Poly<Param, Rational>;

impl ParamPoly {
    pub fn param(p: Param) -> Self {
        Poly::var(p)
    }

    pub fn rational(r: Rational) -> Self {
        Poly::constant(r)
    }

    /// Returns the value when this polynomial carries no parameter.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("right-hand side has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exact division failed")]
    InexactDivision,
}
