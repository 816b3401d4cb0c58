pub mod dgmod;
pub mod error;
pub mod foliation;
pub mod freealg;
pub mod groebner;
pub mod linfty;
pub mod modelcat;
pub mod ring;
pub mod text;

pub use error::{Error, Result};
