//! L∞-algebroids on free graded `A`-modules: Koszul signs, bracket tables,
//! evaluation with the anchor's Leibniz rule, Jacobi and anchor residuals,
//! strict morphisms.
//!
//! Degrees are homological: `ℓ_k` has degree `k - 2`, so `ℓ_1` is the differential.

mod algebroid;
mod element;
mod residual;
mod signs;
pub mod text;

pub use algebroid::{
    element_to_field, evaluate_bracket, field_to_element, tangent_model, BracketTable, LInftyAlgebroid,
};
pub use element::{combine_fields, GradedBasis, GradedElement};
pub use residual::{
    anchor_compat_residual, anchor_compat_residual_higher, anchor_morphism_residual, check_residuals,
    check_strict_morphism, generator_tuples, jacobi_residual, MorphismCertificate, MorphismFailure,
    ResidualFailure, ResidualReport, StrictMorphism,
};
pub use signs::{binomial, koszul_sign, sign_of_swaps, sort_with_sign, swap_sign, unshuffles};
