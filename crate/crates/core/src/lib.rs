//! Conflict-free colorings on open neighborhoods (CFON).
//!
//! A CFON coloring gives every vertex a neighbor whose color appears exactly
//! once among its neighbors. This crate provides:
//!
//! - [`graph`] and [`generators`]: simple graphs, graph families, line graphs
//!   and induced-star (`S_k`) search;
//! - [`hypergraph`]: owner-tagged neighborhood hypergraphs and the
//!   conflict-free check;
//! - [`greedy`]: a deterministic `d_max + 1` color conflict-free colorer and
//!   the independent-set finishing step;
//! - [`random`]: a Las Vegas colorer with a level-structured palette;
//! - [`pipeline`]: degree peeling with per-round hypergraph colorings combined
//!   into a product coloring;
//! - [`exact`]: exact search oracles for small instances;
//! - [`lower_bounds`]: the signature argument bounding CFON colorings of
//!   line graphs of cliques from below;
//! - [`io`]: the graph and coloring text formats.

pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod hypergraph;
pub mod io;
pub mod lower_bounds;
pub mod pipeline;
pub mod random;

/// Dense 0-based vertex id.
pub type Vertex = usize;
/// Color id; 0 is the blank color.
pub type Color = u32;

pub use error::{Error, Result};
pub use graph::{Graph, StarWitness};
pub use hypergraph::{Coloring, HyperEdge, Hypergraph};
pub use pipeline::{cfon_color_skfree, PeelTrace, PipelineOptions};
pub use random::RandomColorConfig;
