//! Measures of how ultrametric a set of dissimilarities is.

mod lerman;
pub mod sampling;
mod subdominant;
mod triangle;

pub use lerman::lerman_h;
pub use sampling::{plan_triplets, TripletPlan};
pub use subdominant::{minimum_spanning_tree, rammal_degree, subdominant_ultrametric};
pub use triangle::{
    triangle_classify, ultrametricity_triangle, TriangleVerdict, UmReport, DEFAULT_MAX_TRIANGLES,
    DEFAULT_TOLERANCE,
};
