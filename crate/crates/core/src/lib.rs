pub mod barcheck;
pub mod braid;
pub mod cartan;
pub mod qsp;
pub mod scalar;
pub mod uqg;

pub use cartan::{AdmissiblePair, CartanDatum, RootVector, WeylWord};
pub use uqg::{Algebra, Element, Monomial, Tensor, UqgError};
pub use scalar::Scalar;
