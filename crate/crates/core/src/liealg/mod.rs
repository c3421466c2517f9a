//! Lie algebras given by structure constants in an orthonormal basis.

mod algebra;
mod matrix;
mod metric;
mod sample;

pub use algebra::{JacobiViolation, LieAlgebra};
pub use matrix::{Matrix, Vector};
pub use metric::{MetricLieAlgebra, ParameterConstraint, Relation};
pub use sample::Sample;

pub(crate) use matrix::null_space;
pub(crate) use sample::is_identifier;
