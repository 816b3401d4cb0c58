//! Singular foliations over `ℚ[x1..xn]`: involutivity certificates, free
//! resolutions, universal `L∞`-algebroid structures on those resolutions,
//! cofibrant replacements by free algebroid cells, and comparisons between
//! replacements.
//!
//! The universal structure lives on the syzygy resolution; the replacement
//! is built from free algebroids. They are different objects and are only
//! compared through their underlying complexes.

mod involutive;
mod replacement;
mod resolution;
mod text;
mod universal;

pub use involutive::{check_involutive, Foliation, InvolutivityCertificate};
pub use replacement::{
    certify_cells, cofibrant_replacement_linfty, compare_replacements, truncation_words, LrCell, LrReplacement, ReplacementComparison,
};
pub use resolution::{free_resolution, verify_resolution, Resolution};
pub use text::{parse_cells_body, parse_foliation_body, write_cells, write_foliation};
pub use universal::{build_universal_structure, resolution_basis, underlying_complex, verify_universal, UniversalStructure};
