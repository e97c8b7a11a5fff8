//! Status (transmission) sequences of trees.
//!
//! The status of a vertex is the sum of its distances to every other vertex.
//! This crate computes status sequences, rebuilds trees from them where that
//! is tractable, reduces 3-Partition to depth-3 tree realizability, and
//! relates status partitions to orbit and equitable partitions.

pub mod automorphism;
pub mod families;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod oracle;
pub mod partitions;
pub mod realize;
pub mod srt_d3;

pub use graph::{Graph, GraphError, Status, StatusSequence, Tree, TreeMetrics, Vertex};
