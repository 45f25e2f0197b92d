//! Track layouts, layered path decompositions, and leveled planar drawings.
//!
//! The crate is organised around four layout structures and the machinery
//! that connects them:
//!
//! * [`graph`] — immutable simple graphs, layerings, and cheap structural
//!   recognizers (bipartiteness, caterpillar forests, cyclomatic number).
//! * [`layout`] — track layouts, leveled drawings, path/tree decompositions,
//!   and their validators. Every correctness claim elsewhere in the crate
//!   bottoms out in these checkers.
//! * [`transforms`] — constructive conversions: wrapping a leveled drawing
//!   onto three tracks, unwrapping a bipartite 3-track layout back into a
//!   drawing, greedy layered path decompositions, and the wrapped track
//!   construction from a layered path decomposition.
//! * [`solvers`] — exponential-time exact oracles at desk scale: leveled
//!   planarity, track number, layered pathwidth, pathwidth.
//! * [`classes`] — direct drawings for special graph classes (trees,
//!   bipartite outerplanar, squaregraphs, Halin graphs, duals of monotone
//!   curve arrangements).
//! * [`families`] — deterministic generators for example and counterexample
//!   families, with machine-checkable certificates, and the boundaried-graph
//!   gluing operator.
//! * [`explore`] — randomized probes (3-track hosts vs. layered pathwidth).
//! * [`io`] / [`render`] — JSON formats and deterministic SVG output.
//!
//! Heavy sweeps go through [`batch`], which runs data-parallel under the
//! `parallel` feature (default) and sequentially without it.

pub mod batch;
pub mod classes;
pub mod explore;
pub mod families;
pub mod graph;
pub mod io;
pub mod layout;
pub mod render;
pub mod solvers;
pub mod transforms;

pub use graph::{bfs_layering, bipartition, graph_stats, is_caterpillar_forest, Graph, Layering};
pub use layout::{
    LayeredPathDecomposition, LayeredTreeDecomposition, LeveledDrawing, PathDecomposition,
    TrackLayout, TreeDecomposition,
};
pub use solvers::SolverBudget;
