//! Exact arithmetic in `A = ℚ[x1, ..., xn]` and its derivation module `T_A`.
//!
//! `A` stands in for the ring of smooth functions on a manifold; vector
//! fields are polynomial derivations.

mod matrix;
mod monomial;
pub mod parse;
mod poly;
mod vector_field;

pub use matrix::{PolyMatrix, PolyVector};
pub use monomial::Monomial;
pub use poly::{Poly, PolyDisplay};
pub use vector_field::{apply_derivation, derivation_name, lie_bracket, VectorField};

pub type Rational = num::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Default variable names: `x, y, z` for up to three variables, `x1..xn` beyond.
pub fn default_variables(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}
