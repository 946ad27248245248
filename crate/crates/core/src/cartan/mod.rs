//! Root-lattice combinatorics: Cartan data, Weyl group words, parabolic
//! subsystems and admissible pairs `(X, tau)`.

mod admissible;
mod datum;
mod root;

pub use admissible::{
    enumerate_admissible, involutive_automorphisms, AdmissiblePair, PairError, Violation,
    ENUMERATION_RANK_LIMIT,
};
pub use datum::{CartanDatum, CartanError};
pub use root::{RootVector, WeylWord};
