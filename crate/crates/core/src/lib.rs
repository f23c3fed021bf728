pub mod automorphism;
pub mod error;
pub mod graph;
pub mod homcount;
pub mod pattern;
pub mod rainbow;
pub mod reflectivity;
pub mod scalar;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{EdgeColouring, Graph};
pub use pattern::Pattern;
pub use scalar::{Rational, Weight};
pub use vertex_set::VertexSet;
