//! Testing whether a graph with three edge importance levels admits a drawing
//! in which primary edges are never crossed and secondary edges are crossed
//! only by tertiary ones.
//!
//! The work happens on the equivalent facial-constrained core planarity
//! formulation: given a graph whose edges are split into a core `E1` and the
//! rest `E2`, plus a set `W` of vertex pairs, find a planar embedding whose
//! restriction to the core puts every pair on a common face. For instances
//! whose whole graph is biconnected, [`fccp::solve_fccp`] decides this with a
//! bottom-up pass over the SPQR-tree; [`oracle`] holds brute-force deciders
//! used to validate it.

pub mod cli;
pub mod embedding;
pub mod error;
pub mod fccp;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod planarity;
pub mod reductions;
pub mod spqr;
mod util;

pub use embedding::{Embedding, Face};
pub use fccp::{solve_fccp, CoreClass, FccpInstance, Verdict};
pub use graph::{Dart, EdgeId, Graph, VertexId};
pub use reductions::{EdgeClass, HppInstance, PepInstance};
pub use spqr::{NodeKind, SpqrTree};
