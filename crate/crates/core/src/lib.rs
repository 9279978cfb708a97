//! Exact computations with differentially homogeneous polynomials.
//!
//! A differential polynomial in the variables `X_0..X_N` and their formal
//! derivatives is differentially homogeneous of degree `d` when
//! `Q·P = Q^d·P` for every polynomial `Q(T)`, where `Q` acts on `X^{(k)}`
//! through the Leibniz rule. This crate builds the Wronskian basis of that
//! space, the highest weight vectors that organize it under `GL_{N+1}`, the
//! tensor-side kernel computations, and the dimension census of twisted jet
//! differentials on projective space. All arithmetic is exact over `ℚ`.

pub mod exact;
pub mod dpoly;
pub mod wronskian;
pub mod tableaux;
pub mod hwv;
pub mod pde;
pub mod jets;
pub mod sampling;
