//! Polynomials over `F_q` whose exponents are powers of `q`: the operad of
//! multilinear natural operations on commutative `F_q`-algebras, its
//! presentation by `μ` and `P_q`, and a multilinearity test in truncated
//! symmetric algebras.

mod multilinear;
mod operad;
mod poly;
mod tree;

pub use multilinear::{
    characterize_multilinear, multilinearity_check, required_cap, satisfies_q_power_criterion, Classification,
    MonomialVerdict, Multilinearity,
};
pub use operad::{q_power_level, qpoly_compose, QPolyOperad, QPolynomial};
pub(crate) use operad::level_vectors;
pub use poly::{eval_poly, Polynomial, TruncatedSymElement};
pub use tree::{
    generated_submonomials, presentation_soundness, qpoly_from_tree, GeneratedMonomial, GeneratorTree,
    PresentationReport,
};
