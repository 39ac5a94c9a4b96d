//! Scalars over R, C and H, realification, and the dense linear algebra
//! every other module builds on.

pub mod eigen;
pub mod linalg;
pub mod realify;
pub mod scalar;

pub use eigen::{simultaneous_eigenspaces, JointEigenspace};
pub use linalg::{nullspace, rank, C64, CMatrix, CVector};
pub use realify::{realify, RealizedMatrix, ScalarMatrix};
pub use scalar::{quaternion_multiply, Field, Scalar};
