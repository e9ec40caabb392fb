use std::collections::VecDeque;

use super::{EdgeId, Graph, GraphError, NodeId};

/// Line graph: one node per edge of `g`, named by the edge's lexicographic
/// rank; two nodes are adjacent iff the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    if g.edge_count() == 0 {
        return Err(GraphError::NoEdges);
    }
    let incident = g.incident_edges();
    let mut pairs = Vec::new();
    for inc in &incident {
        for (a, &e) in inc.iter().enumerate() {
            for &f in &inc[a + 1..] {
                pairs.push((e as u64, f as u64));
            }
        }
    }
    Graph::sequential(g.edge_count(), pairs)
}

/// `g^k`: same nodes, edges between every pair at distance `1..=k`.
pub fn power_graph(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("power must be at least 1".into()));
    }
    let n = g.n();
    let mut pairs = Vec::new();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] == k {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    touched.push(w);
                    queue.push_back(w);
                    if w > s {
                        pairs.push((g.id(s), g.id(w)));
                    }
                }
            }
        }
        for t in touched.drain(..) {
            dist[t] = usize::MAX;
        }
    }
    Graph::new(g.idspace(), g.ids().iter().copied(), pairs)
}

/// Line-graph distance between two edges; `None` when they lie in different
/// components.
pub fn edge_distance(g: &Graph, e: EdgeId, f: EdgeId) -> Result<Option<usize>, GraphError> {
    let src = g.edge_rank(e).ok_or(GraphError::UnknownEdge(e))?;
    let dst = g.edge_rank(f).ok_or(GraphError::UnknownEdge(f))?;
    if src == dst {
        return Ok(Some(0));
    }
    let incident = g.incident_edges();
    let mut dist = vec![usize::MAX; g.edge_count()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let ex = g.edges()[x];
        for end in [ex.lo(), ex.hi()] {
            let i = g.index_of(end).expect("edge endpoint in graph");
            for &y in &incident[i] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == dst {
                        return Ok(Some(dist[y]));
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(None)
}

/// `G[F] = (V, F)`: all nodes of `g`, only the listed edges.
pub fn edge_subgraph<'a>(
    g: &Graph,
    edges: impl IntoIterator<Item = &'a EdgeId>,
) -> Result<Graph, GraphError> {
    let mut list = Vec::new();
    for &e in edges {
        if g.edge_rank(e).is_none() {
            return Err(GraphError::UnknownEdge(e));
        }
        list.push(e.endpoints());
    }
    Graph::new(g.idspace(), g.ids().iter().copied(), list)
}

/// `G[U]`: the listed nodes and every edge of `g` between them. The ID space
/// is inherited.
pub fn induced_subgraph<'a>(
    g: &Graph,
    nodes: impl IntoIterator<Item = &'a NodeId>,
) -> Result<Graph, GraphError> {
    let mut keep = vec![false; g.n()];
    let mut ids = Vec::new();
    for &v in nodes {
        let i = g.index_of(v).ok_or(GraphError::UnknownNode(v))?;
        if !keep[i] {
            keep[i] = true;
            ids.push(v);
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| keep[g.index_of(e.lo()).unwrap()] && keep[g.index_of(e.hi()).unwrap()])
        .map(|e| e.endpoints());
    Graph::new(g.idspace(), ids, edges)
}
