//! Quantifying and exploiting ultrametricity in data.
//!
//! - [`um`]: triangle, rank and subdominant-based ultrametricity measures.
//! - [`recode`]: doubling, complete disjunctive coding, chi-squared distance
//!   and correspondence-analysis embedding.
//! - [`tsfp`]: change/no-change fingerprints of time series.
//! - [`baire`]: digit-prefix (Baire) partitions and k-means refinement.
//! - [`synth`]: seeded point-cloud generators.

pub mod baire;
pub mod datasets;
mod error;
pub mod io;
pub mod matrix;
pub mod recode;
pub mod synth;
pub mod tsfp;
pub mod um;

pub use error::{Error, Result};
pub use matrix::{additive_shift, pairwise_euclidean, DistanceMatrix, Matrix, PointCloud};
