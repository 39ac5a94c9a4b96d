//! Surface groups, their representations and twisted cohomology.

pub mod cohomology;
pub mod fuchsian;
pub mod presentation;
pub mod representation;

pub use cohomology::{relator_map, CohomologyWorkspace, Module};
pub use fuchsian::{
    fuchsian_genus2, fuchsian_sl2, fuchsian_so21, fuchsian_su11, fuchsian_su11_realified, perturbed_fuchsian,
    so21_image,
};
pub use presentation::{standard_presentation, Letter, SurfaceGroupPresentation};
pub use representation::SurfaceRepresentation;
