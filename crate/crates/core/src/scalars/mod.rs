//! Exact scalar arithmetic: finite fields `F_q`, rationals, and `Z/m`.

mod field;
mod scalar;

pub use field::{FieldDescriptor, FiniteField};
pub use scalar::{field_arith, ArithOp, Domain, FqElem, Residue, Scalar};

