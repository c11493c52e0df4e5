//! Dense real matrix kernel: symmetric eigendecomposition, functional calculus,
//! Loewner comparison, Schatten norms, spectral and numerical radius.

pub mod calculus;
pub mod eigen;
pub mod loewner;
pub mod norms;
pub mod radius;

pub use calculus::{
    conjugate_by_sqrt, positivity_threshold, power, power_from, require_positive_definite, require_positive_semidefinite,
    SqrtPair,
};
pub use eigen::{min_eigenvalue, spectral_decompose, symmetric_eigenvalues, SpectralDecomposition};
pub use loewner::{loewner_compare, LoewnerVerdict, Relation, DEFAULT_TOL_REL};
pub use norms::{norm_hs, norm_op, norm_tr, norm_triple, singular_values, NormTriple};
pub use radius::{numerical_radius, spectral_radius, DEFAULT_GRID, DEFAULT_REFINE_ITERS};
