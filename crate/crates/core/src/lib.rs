//! Exact coordinate models of Desargues affine planes over skew fields,
//! ruler-only point arithmetic on a line, ratios of collinear points, and
//! executable checks of the transforms that leave those ratios fixed.

#![allow(clippy::large_enum_variant)]

pub mod axioms;
pub mod construct;
pub mod desargues;
pub mod dsl;
pub mod error;
pub mod figure;
pub mod geometry;
pub mod harness;
pub mod quaternion;
pub mod ratio;
pub mod scalar;
pub mod suites;
pub mod trace;
pub mod transforms;

pub use construct::{geo_add, geo_inv, geo_mul, geo_neg, Aux, Chart, Construction};
pub use error::{Error, Result};
pub use geometry::{collinear, is_parallel, join, meet, parallel_through, Line, Meet, Point};
pub use scalar::{Model, Scalar};
pub use trace::ConstructionTrace;
