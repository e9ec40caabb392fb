//! JSON interchange formats.
//!
//! * graph: `{"n": 4, "idspace": 4, "edges": [[0,1],[1,2]]}` with an optional
//!   `"ids"` list naming every node when the IDs are not `0..n`; edges are
//!   always written with node IDs.
//! * hypergraph: `{"n": 5, "edges": [[0,1,2],[2,3,4]]}`
//! * clique cover: `{"cliques": [[0,1],[1,2]]}`

use serde::{Deserialize, Serialize};

use super::{CliqueEdgeCover, Graph, GraphError, Hypergraph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub idspace: u64,
    pub edges: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub cliques: Vec<Vec<u64>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            idspace: g.idspace(),
            edges: g.edges().iter().map(|e| [e.lo().0, e.hi().0]).collect(),
            ids: (!g.has_sequential_ids()).then(|| g.ids().iter().map(|v| v.0).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let ids: Vec<NodeId> = match j.ids {
            Some(ids) => {
                if ids.len() != j.n {
                    return Err(GraphError::InvalidParameter(format!(
                        "n = {} but {} ids listed",
                        j.n,
                        ids.len()
                    )));
                }
                ids.into_iter().map(NodeId).collect()
            }
            None => (0..j.n as u64).map(NodeId).collect(),
        };
        Graph::new(
            j.idspace,
            ids,
            j.edges.into_iter().map(|[a, b]| (NodeId(a), NodeId(b))),
        )
    }
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson { n: h.n(), edges: h.edges().to_vec() }
    }
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = GraphError;

    fn try_from(j: HypergraphJson) -> Result<Self, GraphError> {
        Hypergraph::new(j.n, j.edges)
    }
}

impl From<&CliqueEdgeCover> for CoverJson {
    fn from(q: &CliqueEdgeCover) -> Self {
        CoverJson {
            cliques: q.cliques().iter().map(|c| c.iter().map(|v| v.0).collect()).collect(),
        }
    }
}

impl From<CoverJson> for CliqueEdgeCover {
    fn from(j: CoverJson) -> Self {
        CliqueEdgeCover::new(
            j.cliques
                .into_iter()
                .map(|c| c.into_iter().map(NodeId).collect())
                .collect(),
        )
    }
}
