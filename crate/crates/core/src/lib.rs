//! p-centered colorings of sparse graphs.
//!
//! A coloring is p-centered when every connected subgraph either sees more
//! than `p` colors or has a color that occurs exactly once in it. This crate
//! builds such colorings for graphs given with a tree decomposition, with a
//! planar rotation system, or with a rotation system of higher genus, checks
//! them exactly, and uses them for a subgraph isomorphism search.

pub mod coloring;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lifting;
pub mod planar;
pub mod subiso;
pub mod surface;
pub mod treedecomp;
pub mod verify;

pub use coloring::Coloring;
pub use error::{Error, Result};
pub use graph::{Graph, Partition, VertexPath};
pub use treedecomp::TreeDecomposition;
