//! Orbit length generating functions
//! `Phi_w = sum o_{m,n}(w) X^m Y^n`, where `o_{m,n}` counts orbits of length
//! `2^m` on level `n`, and the companion `Psi_w` with
//! `Phi_w = 1/(1-2Y) + (X-2)/(1-2Y) * Psi_w`.

mod graph;
mod orbits;
mod solve;

pub use graph::{classify, descendant_graph, Classification, DescendantGraph, Edge};
pub use orbits::{orbit_counts, series_phi, series_psi, square_relation_check, OrbitTable};
pub use solve::{phi_from_psi, psi_from_phi, rational_phi, OlgfResult};

use thiserror::Error;

use crate::poly_series::PolyError;
use crate::tree_group::TreeError;

/// Default cap on the number of descendant-graph nodes.
pub const DEFAULT_NODE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OlgfError {
    #[error("descendant graph incomplete after {nodes} nodes; not Phi-finite within budget")]
    NotPhiFinite { nodes: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[cfg(test)]
mod tests;
