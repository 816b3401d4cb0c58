//! The model structure on `Mod/T_A`: generating cells, relative cell
//! complexes, classification of morphisms, small-object factorizations,
//! cofibrant replacements and lifting.
//!
//! Fibrations are the maps surjective in positive degrees; weak equivalences
//! are quasi-isomorphisms, decided up to a degree bound.

mod cells;
mod classify;
mod factor;
mod lifting;

pub use cells::{attach_cell_pushout, check_attachment, CellAttachment, CellularMap, GeneratingCell};
pub use classify::{classify_morphism, classify_onto, tangent_complex, AnchoredMap, Classification, Target};
pub(crate) use factor::prune_witnesses;
pub use factor::{cofibrant_replacement, factor_cof_trivfib, factor_onto, replace_target, FactorMode, Factorization};
pub use lifting::{
    lift_between_replacements, pi_l_bijection_check, solve_lifting, solve_lifting_with, LiftingProblem,
    PiBijectionReport, ReplacementLift, SolveOrder,
};
