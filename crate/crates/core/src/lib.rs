//! Exact computations with endomorphism operads of functors.
//!
//! The crate builds the Perm, free-group word and q-polynomial operads,
//! checks their operad axioms, and recomputes central and endomorphism
//! operads by enumerating natural transformations over small full
//! subcategories.

pub mod checks;
pub mod error;
pub mod finite;
pub mod linalg;
pub mod naturality;
pub mod operad;
pub mod permutation;
pub mod qpoly;
pub mod scalars;
pub mod word;

pub use error::{Error, Result};
