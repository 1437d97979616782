//! Metric recognition of spherical and Euclidean buildings.
//!
//! The crate works with finite piecewise spherical / Euclidean simplicial
//! complexes ([`MetricComplex`]) and decides, certifies or diagnoses
//! whether they are buildings: through exact metric-graph analysis in
//! dimension one, recursive link checks in higher dimension, Coxeter
//! complex generation, geodesic propagation of apartments and join/product
//! decomposition.

#![allow(clippy::result_large_err, clippy::type_complexity, clippy::needless_range_loop)]

pub mod angle;
pub mod budget;
pub mod complex;
pub mod corpus;
pub mod coxeter;
pub mod decompose;
pub mod error;
pub mod geodesic;
pub mod graph;
pub mod recognize;
pub mod report;

pub use angle::Angle;
pub use budget::Budgets;
pub use complex::{ComplexBuilder, Geometry, MetricComplex, ValidationReport};
pub use error::{Error, Result};
