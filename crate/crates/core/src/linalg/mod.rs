//! Dense exact linear algebra over [`Domain`](crate::scalars::Domain) scalars.

mod equivariant;
mod matrix;

pub use equivariant::{
    commutant, equivariant_homs, general_linear_group, intertwiners, permutation_operator, prime_diagonal,
    random_invertible, schur_weyl_full_group, schur_weyl_run, seeded_generators,
    symmetric_group_image_dim, Codomain, HomBasis, SchurWeylRun,
};
pub use matrix::ExactMatrix;
