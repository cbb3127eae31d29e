//! Engine for the slow-coloring game and the interactive sum choice game.
//!
//! - [`math`]: triangular numbers and `u(r)`.
//! - [`graph`], [`enumerate`]: graphs, forests, stems, free-tree enumeration.
//! - [`peel`]: linear-time sum-color cost on forests with a certificate trace.
//! - [`exact`]: memoized minimax for the slow-coloring game on small graphs.
//! - [`strategy`]: constructive Lister and Painter strategies on forests.
//! - [`isc`]: the interactive sum choice game.
//! - [`extremal`]: extremal-tree characterizations and the census.

pub mod enumerate;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod generate;
pub mod graph;
pub mod isc;
pub mod math;
pub mod peel;
pub mod strategy;

pub use error::{Error, Result};
pub use graph::{cut_edges, find_stem, parse_graph, validate_forest, Cut, Forest, Graph, Stem};
pub use math::{is_triangular, triangular, u};
pub use peel::{s_forest, s_forest_trace, PeelStep, PeelTrace};

/// Vertex subset of a graph with at most 64 vertices.
pub type Mask = u64;

/// Vertex ids in a mask, ascending.
pub fn mask_vertices(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn mask_of(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}
