//! Forbidden topological minors for metrizability and graph-level
//! decisions.
//!
//! The eleven bundled graphs are known to be non-metrizable and
//! topologically minimal; each ships with a consistent path system and a
//! certificate forcing one edge weight to be non-positive. Whether the
//! list is complete, and whether the graphs are also the minimal ones for
//! strict metrizability, is not known; the catalog only claims
//! non-metrizability.

mod data;
mod decide;
mod screen;

pub use data::{catalog, CatalogEntry};
pub use decide::{decide_graph, decide_graph_with, kn2_family_check, Budget, GraphVerdict, MetReason, NonMetReason};
pub use screen::{screen_catalog, screen_structural, Rule};
