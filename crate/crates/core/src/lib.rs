//! Network decompositions in a simulated synchronous LOCAL model, the coloring
//! kernels they rely on, separated and low-intersecting variants, approximation
//! algorithms built on top of them, and exhaustive oracles to check everything.

pub mod apps;
pub mod coloring;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod separated;
pub mod sim;

pub use error::{Error, Result};
pub use graph::{Graph, SuperGraph, VertexSet};
pub use sim::{rng_for, RoundLedger, SimConfig};
