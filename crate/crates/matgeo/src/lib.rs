//! Commutator calculus on the matrix algebra M_n.
//!
//! Two Hermitian generators x, y turn M_n into a finite-dimensional
//! geometry: the commutators [y, .] and -[x, .] act as partial derivatives,
//! and the double-commutator Laplacian they generate drives everything else
//! in this crate -- a Poisson solver, the heat semigroup with its spectral
//! decomposition, entropy/stability diagnostics, and time integrators for
//! heat-type flows.
//!
//! Modules follow the pipeline: [`algebra`] is the dense complex-matrix
//! layer, [`geometry`] builds the generators and the Laplacian, [`spectral`]
//! diagonalizes it, [`poisson`] inverts it, [`flows`] integrates it.

pub mod algebra;
pub mod error;
pub mod flows;
pub mod geometry;
pub mod poisson;
pub mod spectral;

pub use algebra::Matrix;
pub use error::{Error, Result};
pub use geometry::{GeneratorSpec, GeometryContext, Superoperator};
pub use spectral::Spectrum;
