//! Consistent path systems in small graphs.
//!
//! A path system picks one simple path for every pair of vertices. This
//! crate checks consistency, decides whether some positive edge weights
//! make every chosen path a (unique) shortest path, and otherwise produces
//! a certificate: a nonnegative combination of path inequalities that
//! forces some edge weight to be non-positive.

pub mod circle_maps;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod metrize;
pub mod minors;
pub mod path_system;
pub mod weights;

pub use error::{Error, Result};
pub use graph::Graph;
pub use path_system::{PartialPathSystem, PathSystem};
pub use weights::{Rational, WeightFunction};
