//! Graphic TSP walks on subcubic graphs.
//!
//! A 2-connected subcubic graph is reduced step by step to a basic or clean
//! graph, an Eulerian subgraph of small excess is built there from a
//! fractional perfect-matching decomposition, lifted back through the
//! reductions, and turned into a closed walk.

#![allow(clippy::needless_range_loop)]

pub mod bench;
pub mod connectivity;
pub mod cycles;
pub mod eulerian;
pub mod generators;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod reduction;
pub mod walk;

pub use graph::{Graph, GraphError, Multigraph};
