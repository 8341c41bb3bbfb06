//! The operad interface, a bounded axiom checker, and the Perm, trivial and
//! tabulated operads.
//!
//! Symmetric action convention: `(σ·w)(a₁, …, aₙ) = w(a_{σ(1)}, …, a_{σ(n)})`.
//! This is a left action, `σ·(τ·w) = (σ∘τ)·w`.

mod algebra;
mod axioms;
mod builtin;
mod perm;
mod tabulated;
mod trivial;

use std::fmt::{Debug, Display};

use crate::error::Result;
use crate::permutation::Permutation;

pub use algebra::{check_algebra_action, Algebra};
pub use axioms::{check_operad_axioms, AxiomCheck, AxiomReport};
pub use builtin::{BuiltinOperad, OperadElement};
pub use perm::{perm_compose, PermElement, PermFault, PermOperad};
pub(crate) use tabulated::{decode_tuple, encode_tuple};
pub use tabulated::{TabulatedOp, TabulatedOperad};
pub use trivial::{TrivialElement, TrivialOperad};

/// A symmetric operad with a bounded enumeration of each component.
pub trait Operad: Sync {
    type Element: Clone + Eq + Debug + Display + Send + Sync;

    fn name(&self) -> String;

    fn arity(&self, e: &Self::Element) -> usize;

    /// Partial composition `w1 ∘_i w2`, one-based `i`.
    fn compose_at(&self, w1: &Self::Element, i: usize, w2: &Self::Element) -> Result<Self::Element>;

    /// `σ·w`; `σ` must permute `1..=arity(w)`.
    fn act(&self, sigma: &Permutation, w: &Self::Element) -> Result<Self::Element>;

    fn unit(&self) -> Self::Element;

    /// Distinct elements of arity `arity` up to an operad-specific size
    /// bound, in a fixed order. Infinite operads return a finite slice.
    fn enumerate(&self, arity: usize, size_bound: usize) -> Vec<Self::Element>;
}
