//! Deciding periodicity along a fixed vector with strip graphs.
//!
//! For a vector `(p,q)` with `p > 0`, a configuration periodic along it is
//! determined by its band `[0,p) × ℤ`, cut into blocks of `K` rows. Valid
//! blocks are the nodes of a finite graph and valid stacked pairs its edges,
//! so periodic configurations are bi-infinite walks. A cycle yields a
//! periodic tiling; two distinct cycles, one reachable from the other, yield
//! a walk that is not eventually periodic in both directions, hence a tiling
//! periodic along `(p,q)` only.

mod decide;
mod strip;
mod witness;

pub use decide::{decide_on_graph, decide_periodic, decide_periodic_with, Decision};
pub use strip::{
    build_strip_graph, build_strip_graph_with, build_strip_nodes, build_strip_nodes_with, choose_k,
    Frame, Strip, StripGraph,
};
pub use witness::{
    parse_witness, realize_witness_patch, realize_witness_window, write_witness, PeriodicWitness,
    WitnessKind, WITNESS_HEADER,
};

/// Limits on strip enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of strip nodes.
    pub nodes: u64,
    /// Maximum number of search steps per enumeration.
    pub steps: u64,
    /// Maximum number of tiles held by all strip nodes together.
    pub cells: u64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 2_000_000;
    pub const DEFAULT_CELLS: u64 = 50_000_000;

    pub fn with_nodes(nodes: u64) -> Self {
        Budget {
            nodes,
            steps: nodes.saturating_mul(64),
            cells: Self::DEFAULT_CELLS,
        }
    }

    /// Default budget, with the node limit overridden by `SLOPEKIT_BUDGET`.
    pub fn from_env() -> Self {
        let nodes = std::env::var("SLOPEKIT_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_NODES);
        Budget::with_nodes(nodes)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::with_nodes(Self::DEFAULT_NODES)
    }
}
