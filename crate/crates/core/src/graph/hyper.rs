use std::collections::BTreeSet;

use super::{CliqueEdgeCover, Graph, GraphError, NodeId};

/// A hypergraph on vertices `0..n`. Every hyperedge has at least two
/// distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    rank: usize,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut clean = Vec::with_capacity(edges.len());
        let mut rank = 0;
        for (index, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::InvalidHyperedge {
                    index,
                    reason: "repeated vertex".into(),
                });
            }
            if e.len() < 2 {
                return Err(GraphError::InvalidHyperedge {
                    index,
                    reason: "fewer than two vertices".into(),
                });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(GraphError::InvalidHyperedge {
                    index,
                    reason: format!("vertex {v} out of range"),
                });
            }
            rank = rank.max(e.len());
            clean.push(e);
        }
        Ok(Hypergraph { n, edges: clean, rank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Largest hyperedge cardinality (0 without edges).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Per vertex, the indices of hyperedges containing it (ascending).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// The simple graph with the same edges, if every hyperedge has size 2.
    pub fn as_graph(&self) -> Option<Graph> {
        if self.edges.iter().any(|e| e.len() != 2) {
            return None;
        }
        Graph::sequential(
            self.n,
            self.edges.iter().map(|e| (e[0] as u64, e[1] as u64)),
        )
        .ok()
    }
}

/// Line graph of a hypergraph (nodes = hyperedge indices, adjacent iff the
/// hyperedges intersect) with the clique cover `{C_v}`, where `C_v` holds the
/// hyperedges containing vertex `v`. Identical cliques are merged, so the
/// cover's diversity never exceeds the rank.
pub fn hyper_line_graph_with_cover(h: &Hypergraph) -> (Graph, CliqueEdgeCover) {
    let mut pairs = BTreeSet::new();
    let mut cliques: Vec<Vec<NodeId>> = Vec::new();
    let mut seen = BTreeSet::new();
    for members in h.incidence() {
        if members.is_empty() {
            continue;
        }
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                pairs.insert((x as u64, y as u64));
            }
        }
        let clique: Vec<NodeId> = members.iter().map(|&e| NodeId(e as u64)).collect();
        if seen.insert(clique.clone()) {
            cliques.push(clique);
        }
    }
    let line = Graph::sequential(h.edges().len(), pairs).expect("line graph is simple");
    (line, CliqueEdgeCover::new(cliques))
}
