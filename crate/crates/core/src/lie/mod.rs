//! Classical real Lie algebras and their subalgebras.

pub mod limit;
pub mod model;
pub mod subalgebra;

pub use limit::conjugation_limit;
pub use model::{build_classical, indefinite_form, Family, LieAlgebraModel};
pub use subalgebra::{
    center_of, centralizer, killing_restriction_nondegenerate, Generator, KillingRestriction,
    SubalgebraHandle,
};
