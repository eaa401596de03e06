//! Down-left graphs, the regularity of their edge ideals, and the regularity
//! of toric ideals of chordal bipartite, (K3,3 minus an edge)-free graphs.
//!
//! Every closed-form value computed here can be cross-checked against the
//! brute-force Hochster oracle in [`hochster`].

pub mod acceptance;
pub mod commands;
pub mod downleft;
pub mod graph;
pub mod hochster;
pub mod io;
pub mod sample;
pub mod toric;

pub use graph::{Graph, GraphError, GridCoord, Limits, VertexId, VertexSet};
