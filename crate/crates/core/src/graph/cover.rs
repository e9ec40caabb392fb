use std::collections::BTreeMap;

use super::{EdgeId, Graph, GraphError, NodeId};

/// A list of cliques meant to cover every node and every edge of a graph.
///
/// Construction only normalizes; [`CliqueEdgeCover::validate`] checks the
/// cover against a concrete graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueEdgeCover {
    cliques: Vec<Vec<NodeId>>,
    membership: BTreeMap<NodeId, Vec<usize>>,
}

impl CliqueEdgeCover {
    pub fn new(cliques: Vec<Vec<NodeId>>) -> Self {
        let cliques: Vec<Vec<NodeId>> = cliques
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let mut membership: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                membership.entry(v).or_default().push(i);
            }
        }
        CliqueEdgeCover { cliques, membership }
    }

    /// One 2-clique per edge plus a singleton per isolated node; its
    /// diversity equals the maximum degree (or 1).
    pub fn trivial(g: &Graph) -> Self {
        let mut cliques: Vec<Vec<NodeId>> =
            g.edges().iter().map(|e| vec![e.lo(), e.hi()]).collect();
        for i in 0..g.n() {
            if g.is_isolated(i) {
                cliques.push(vec![g.id(i)]);
            }
        }
        CliqueEdgeCover::new(cliques)
    }

    pub fn cliques(&self) -> &[Vec<NodeId>] {
        &self.cliques
    }

    /// Indices of the cliques containing `v`, ascending.
    pub fn memberships(&self, v: NodeId) -> &[usize] {
        self.membership.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Maximum number of cliques any single node belongs to.
    pub fn diversity(&self) -> usize {
        self.membership.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Smallest-ID member, which coordinates the clique.
    pub fn leader(&self, clique: usize) -> NodeId {
        self.cliques[clique][0]
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        for (i, c) in self.cliques.iter().enumerate() {
            if c.is_empty() {
                return Err(GraphError::InvalidCover(format!("clique {i} is empty")));
            }
            for &v in c {
                if !g.contains(v) {
                    return Err(GraphError::InvalidCover(format!(
                        "clique {i} names unknown node {v}"
                    )));
                }
            }
            for (a, &u) in c.iter().enumerate() {
                for &w in &c[a + 1..] {
                    if !g.has_edge(u, w) {
                        return Err(GraphError::InvalidCover(format!(
                            "clique {i} is not complete: {} missing",
                            EdgeId::new(u, w)
                        )));
                    }
                }
            }
        }
        for &v in g.ids() {
            if self.memberships(v).is_empty() {
                return Err(GraphError::InvalidCover(format!("node {v} is uncovered")));
            }
        }
        for e in g.edges() {
            let (a, b) = e.endpoints();
            let ma = self.memberships(a);
            if !self.memberships(b).iter().any(|c| ma.contains(c)) {
                return Err(GraphError::InvalidCover(format!("edge {e} is uncovered")));
            }
        }
        Ok(())
    }
}
