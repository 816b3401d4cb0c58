//! Free `L∞`-algebroids on anchored modules, truncated by bracket weight
//! and degree.
//!
//! Two presentations of the same object live here. The raw one keeps unary
//! brackets `[w]_1` of composite words as words and quotients by the Jacobi
//! relations; the oriented one solves each Jacobi identity for its
//! `[ℓ_k(..)]_1` term, which turns the words without unary nodes into a
//! basis and the free algebroid into an honest complex of free modules.
//! Weight is `Σ (k - 1)` over bracket nodes, which `ℓ1` never raises.

mod lr;
mod relations;
mod span;
mod text;
mod word;

pub use lr::{free_algebroid_anchor, normalize_word, oriented_truncation, FreeLR, OrientedTruncation, UnaryMode};
pub use relations::{
    extend_strict_morphism, extension_disagreement, relation_basis, relation_span_membership,
    self_extension_is_identity, Extension, ExtensionFailure, Membership, RelationBasis, RelationOrigin,
};
pub use span::{enumerate_words, WordSpan};
pub use text::parse_word_element;
pub use word::{canonical_node, word_degree, word_weight, LWord, Word, WordElement};
