//! Exact computation of basepoint-freeness thresholds of polarized abelian
//! surfaces of type `(1,d)`.
//!
//! The threshold of a polarization pair is a quadratic irrational determined
//! by the fundamental solution of `x^2 - 4d y^2 = 1`; this crate computes it
//! exactly, along with the piecewise cohomological rank functions behind it,
//! semihomogeneous-bundle invariants, lattice realizations, and brute-force
//! oracles for every closed form.

pub mod cli;
pub mod crf;
pub mod exact;
pub mod lattice;
pub mod oracle;
pub mod pell;
pub mod semihomog;
pub mod thresholds;

pub use exact::{QuadVal, Rat};
pub use pell::{fundamental_solution, nth_solution, pell_for_type, PellSolution, TypePellData};
pub use semihomog::{chern_vector, torsion_count_u, ChernVector, Slope};
pub use thresholds::{
    beta0_principal, beta_inverse, beta_pair, beta_principal, family_beta, product_surface_beta,
    subadditivity_check, PolarizedPair, ThresholdResult,
};
