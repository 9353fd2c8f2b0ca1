//! Gröbner bases of graded submodules of free modules, and what they buy:
//! normal forms, kernels, syzygies, lifts and subquotients.

pub(crate) mod basis;
pub mod ideal;
pub mod kernel;
pub mod map;
pub mod subquotient;
pub mod syzygy;

pub use basis::{buchberger, ideal_basis, normal_form, submodule_membership, GroebnerBasis};
pub use ideal::{ideal_quotient, krull_dimension};
pub use kernel::{kernel_of_map, Lifter};
pub use map::{MatrixDump, ModuleMap};
pub use subquotient::{minimal_subset, prune_presentation, subquotient_presentation, Subquotient};
pub use syzygy::{generator_map, schreyer_syzygies, syzygy_module};
