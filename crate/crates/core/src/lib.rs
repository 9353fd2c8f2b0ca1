pub mod asymptotic;
pub mod cohomology;
pub mod error;
pub mod field_poly;
pub mod graded_ring;
pub mod harness;
pub mod groebner;
pub mod par;
pub mod resolution;

pub use error::{AlgebraError, Result};
