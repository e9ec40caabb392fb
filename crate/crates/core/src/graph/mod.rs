//! Immutable simple undirected graphs with stable node identifiers, plus the
//! derived structures (line graphs, power graphs, hypergraphs, clique covers)
//! the algorithms and oracles work on.

mod cover;
mod derive;
pub mod generate;
mod hyper;
pub mod json;

pub use cover::CliqueEdgeCover;
pub use derive::{edge_distance, edge_subgraph, induced_subgraph, line_graph, power_graph};
pub use hyper::{hyper_line_graph_with_cover, Hypergraph};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate node id {0}")]
    DuplicateId(NodeId),
    #[error("node id {id} outside id space [0, {idspace})")]
    IdOutOfRange { id: NodeId, idspace: u64 },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("parallel edge {0}")]
    ParallelEdge(EdgeId),
    #[error("edge references unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("no edges")]
    NoEdges,
    #[error("invalid hyperedge {index}: {reason}")]
    InvalidHyperedge { index: usize, reason: String },
    #[error("invalid clique cover: {0}")]
    InvalidCover(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Unique node identifier, drawn from `[0, idspace)` of the owning graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An undirected edge named by its endpoint IDs, smaller first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(NodeId, NodeId);

impl EdgeId {
    /// Canonical edge name; panics on a self-loop.
    pub fn new(a: NodeId, b: NodeId) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            EdgeId(a, b)
        } else {
            EdgeId(b, a)
        }
    }

    pub fn lo(&self) -> NodeId {
        self.0
    }

    pub fn hi(&self) -> NodeId {
        self.1
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.0, self.1)
    }

    pub fn touches(&self, v: NodeId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: NodeId) -> NodeId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Number of bits needed to write any value in `[0, space)`; at least one.
pub fn bits_for(space: u64) -> u32 {
    if space <= 2 {
        1
    } else {
        64 - (space - 1).leading_zeros()
    }
}

/// A simple undirected graph.
///
/// Nodes are stored in ascending ID order, so the internal index order and
/// the ID order coincide. Adjacency lists are sorted the same way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<NodeId>,
    adj: Vec<Vec<usize>>,
    edges: Vec<EdgeId>,
    idspace: u64,
}

impl Graph {
    pub fn new(
        idspace: u64,
        ids: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut ids: Vec<NodeId> = ids.into_iter().collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateId(w[0]));
            }
        }
        if let Some(&last) = ids.last() {
            if last.0 >= idspace {
                return Err(GraphError::IdOutOfRange { id: last, idspace });
            }
        }
        let mut adj = vec![Vec::new(); ids.len()];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let ia = ids.binary_search(&a).map_err(|_| GraphError::UnknownNode(a))?;
            let ib = ids.binary_search(&b).map_err(|_| GraphError::UnknownNode(b))?;
            adj[ia].push(ib);
            adj[ib].push(ia);
            list.push(EdgeId::new(a, b));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::ParallelEdge(w[0]));
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph { ids, adj, edges: list, idspace })
    }

    /// Graph on IDs `0..n` with `idspace = n`.
    pub fn sequential(
        n: usize,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, GraphError> {
        Graph::new(
            n as u64,
            (0..n as u64).map(NodeId),
            edges.into_iter().map(|(a, b)| (NodeId(a), NodeId(b))),
        )
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn idspace(&self) -> u64 {
        self.idspace
    }

    /// Bits needed to name a node: `max(1, ceil(log2 idspace))`.
    pub fn id_bits(&self) -> u32 {
        bits_for(self.idspace)
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> NodeId {
        self.ids[index]
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index_of(id).is_some()
    }

    /// Neighbor indices of the node at `index`, ascending.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn neighbor_ids(&self, index: usize) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[index].iter().map(move |&j| self.ids[j])
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges in lexicographic order; an edge's position here is its rank.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_rank(&self, e: EdgeId) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        a != b && self.edge_rank(EdgeId::new(a, b)).is_some()
    }

    pub fn is_isolated(&self, index: usize) -> bool {
        self.adj[index].is_empty()
    }

    /// Per node, the ranks of its incident edges (in neighbor order).
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|i| {
                self.adj[i]
                    .iter()
                    .map(|&j| {
                        self.edge_rank(EdgeId::new(self.ids[i], self.ids[j]))
                            .expect("adjacency and edge list agree")
                    })
                    .collect()
            })
            .collect()
    }

    /// True if the IDs are exactly `0..n`.
    pub fn has_sequential_ids(&self) -> bool {
        self.ids.iter().enumerate().all(|(i, id)| id.0 == i as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(
            Graph::sequential(3, [(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(NodeId(0))
        );
        assert_eq!(
            Graph::sequential(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::ParallelEdge(EdgeId::new(NodeId(0), NodeId(1)))
        );
        assert_eq!(
            Graph::sequential(3, [(0, 5)]).unwrap_err(),
            GraphError::UnknownNode(NodeId(5))
        );
        assert!(matches!(
            Graph::new(4, [NodeId(1), NodeId(4)], []),
            Err(GraphError::IdOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::new(9, [NodeId(1), NodeId(1)], []),
            Err(GraphError::DuplicateId(_))
        ));
    }

    #[test]
    fn index_order_follows_ids() {
        let g = Graph::new(
            100,
            [NodeId(42), NodeId(7), NodeId(13)],
            [(NodeId(42), NodeId(7)), (NodeId(13), NodeId(42))],
        )
        .unwrap();
        assert_eq!(g.ids(), &[NodeId(7), NodeId(13), NodeId(42)]);
        assert_eq!(g.neighbors(2), &[0, 1]);
        assert_eq!(
            g.edges(),
            &[EdgeId::new(NodeId(7), NodeId(42)), EdgeId::new(NodeId(13), NodeId(42))]
        );
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.id_bits(), 7);
    }

    #[test]
    fn id_bits_edge_cases() {
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 2);
        assert_eq!(bits_for(5), 3);
        assert_eq!(bits_for(1 << 16), 16);
        assert_eq!(bits_for((1 << 16) + 1), 17);
    }
}
