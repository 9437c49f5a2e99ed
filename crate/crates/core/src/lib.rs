//! Wheel-free graphs: constructions, spectra, equitable quotients,
//! isomorph-free enumeration and exhaustive extremal search.

pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod partition;
pub mod poly;
pub mod search;
pub mod spectral;
pub mod subcase;
pub mod table;
pub mod wheel;

pub use graph::{Graph, GraphError, VertexSet};
