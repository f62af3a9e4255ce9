//! Host graphs built as blowups of small random graphs, the blobbing
//! machinery used to bound the probability that a random sparse graph is a
//! minor of such a host, and an exact minor-containment search for checking
//! all of it at small sizes.

pub mod blobbing;
pub mod graph;
pub mod harness;
pub mod minor;
pub mod params;
pub mod randgen;
pub mod verify;

pub use graph::{average_degree, blowup, non_adjacent, BlowupGraph, Graph, GraphError};
pub use params::{derive_params, lambda_constant, ConstructionParams};
pub use randgen::{sample_gnm, sample_gnp, sample_h, Seed};
