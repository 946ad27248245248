//! The quantized enveloping algebra `U_q(g)` of a symmetrizable Kac-Moody
//! algebra over `Q(i)(q^{1/2})`.
//!
//! Elements are linear combinations of normal-ordered monomials
//! `E_{a_1} ... E_{a_r} K_beta F_{b_1} ... F_{b_s}`. Products are straightened
//! with the commutation relations between `E`, `K` and `F` only; quantum Serre
//! relations are never rewritten, so equality is decided semantically by
//! [`Algebra::is_zero`].

mod algebra;
mod derivation;
mod element;
mod hopf;
mod involution;
mod monomial;
mod text;
mod zero;

use thiserror::Error;

pub use algebra::{Algebra, Straightened, DEFAULT_MAX_BUCKET};
pub use element::Element;
pub use hopf::Tensor;
pub use monomial::{word_degree, Monomial, Word};
pub use zero::{DVector, IntPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UqgError {
    #[error("zero test needs {evaluations} word evaluations, above the limit {limit}")]
    BucketTooLarge { evaluations: usize, limit: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is not of the form u K_beta with u in U^+")]
    NotPositive,
    #[error("cannot parse element at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by an element that is not a scalar")]
    DivisionByNonScalar,
    #[error("unknown node label {0}")]
    UnknownLabel(i64),
}

#[cfg(test)]
mod tests;
