//! Output objects shared by the algorithms and the oracles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, NodeId};

/// An edge set claimed to be `(alpha, beta)`-ruling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingEdgeSet {
    pub edges: BTreeSet<EdgeId>,
    pub alpha: usize,
    pub beta: usize,
}

/// A node set claimed to be `(alpha, beta)`-ruling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingSet {
    pub nodes: BTreeSet<NodeId>,
    pub alpha: usize,
    pub beta: usize,
}

/// Edge set `F` with `max degree of (V, F) <= d`, dominating every edge within `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeKernel {
    pub edges: BTreeSet<EdgeId>,
    pub d: usize,
    pub r: usize,
}

/// Node set `A` with `max degree of G[A] <= d`, dominating every node within `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexKernel {
    pub nodes: BTreeSet<NodeId>,
    pub d: usize,
    pub r: usize,
}

/// Colors proper on `G^power`, all below `num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: BTreeMap<NodeId, u64>,
    pub num_colors: u64,
    pub power: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
}

/// Assembles an edge set from per-node reports of selected neighbors. Every
/// edge must be reported by both of its endpoints.
pub(crate) fn edges_from_endpoints(
    reports: &BTreeMap<NodeId, Vec<NodeId>>,
) -> crate::error::Result<BTreeSet<EdgeId>> {
    let mut once = BTreeSet::new();
    let mut twice = BTreeSet::new();
    for (&v, nbrs) in reports {
        for &w in nbrs {
            let e = EdgeId::new(v, w);
            if !once.insert(e) {
                twice.insert(e);
            }
        }
    }
    match once.difference(&twice).next() {
        Some(&e) => Err(crate::error::Error::EdgeDisagreement(e)),
        None => Ok(twice),
    }
}
