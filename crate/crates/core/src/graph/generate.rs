//! Deterministic graph and hypergraph generators for test corpora.
//!
//! Structured families (ring, path, complete) ignore the seed. Every
//! generator first builds its structure on positions `0..n` and then assigns
//! IDs according to an [`IdMode`].

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Hypergraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdMode {
    /// IDs `0..n`, `idspace = n`.
    #[default]
    Sequential,
    /// Distinct seeded IDs from `[0, n^3)`, `idspace = n^3`.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Ring { n: usize },
    Path { n: usize },
    Complete { n: usize },
    ErdosRenyi { n: usize, p: f64 },
    DRegular { n: usize, d: usize },
    RandomHypergraph { n: usize, edges: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

/// Builds the instance described by `spec`. Hypergraphs always use
/// sequential vertex IDs.
pub fn generate(spec: &GenSpec, ids: IdMode, seed: u64) -> Result<Generated, GraphError> {
    let structure = match *spec {
        GenSpec::Ring { n } => {
            check_n(n)?;
            ring(n)
        }
        GenSpec::Path { n } => {
            check_n(n)?;
            path(n)
        }
        GenSpec::Complete { n } => {
            check_n(n)?;
            complete(n)
        }
        GenSpec::ErdosRenyi { n, p } => erdos_renyi(n, p, seed)?,
        GenSpec::DRegular { n, d } => d_regular(n, d, seed)?,
        GenSpec::RandomHypergraph { n, edges, rank } => {
            return random_hypergraph(n, edges, rank, seed).map(Generated::Hypergraph)
        }
    };
    Ok(Generated::Graph(assign_ids(&structure, ids, seed)))
}

fn check_n(n: usize) -> Result<(), GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("n must be at least 1".into()));
    }
    Ok(())
}

/// Cycle `0-1-…-(n-1)-0`; degenerates to a single edge for `n = 2` and a
/// lone node for `n = 1`.
pub fn ring(n: usize) -> Graph {
    let n64 = n as u64;
    let edges: BTreeSet<(u64, u64)> = (0..n64)
        .filter_map(|i| {
            let j = (i + 1) % n64;
            (i != j).then(|| (i.min(j), i.max(j)))
        })
        .collect();
    Graph::sequential(n, edges).expect("ring is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::sequential(n, (1..n as u64).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn complete(n: usize) -> Graph {
    let n = n as u64;
    Graph::sequential(
        n as usize,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
    )
    .expect("complete graph is simple")
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n64 = n as u64;
    let mut edges = Vec::new();
    for i in 0..n64 {
        for j in i + 1..n64 {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::sequential(n, edges)
}

/// Uniform-ish random `d`-regular graph: random pairing of half-edges that
/// skips loops and repeats, restarting when it gets stuck.
pub fn d_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    check_n(n)?;
    if d >= n || (n * d) % 2 == 1 {
        return Err(GraphError::InvalidParameter(format!(
            "no {d}-regular graph on {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..1000 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..100 {
                let a = rng.gen_range(0..stubs.len());
                let b = rng.gen_range(0..stubs.len());
                let (u, v) = (stubs[a], stubs[b]);
                if a == b || u == v || edges.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                edges.insert((u.min(v), u.max(v)));
                let (hi, lo) = (a.max(b), a.min(b));
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'attempt;
            }
        }
        let mut list: Vec<(u64, u64)> =
            edges.into_iter().map(|(u, v)| (u as u64, v as u64)).collect();
        list.sort_unstable();
        return Graph::sequential(n, list);
    }
    Err(GraphError::InvalidParameter(format!(
        "failed to sample a {d}-regular graph on {n} nodes"
    )))
}

/// `edges` hyperedges on `n` vertices with sizes uniform in `2..=rank`; the
/// first hyperedge has exactly `rank` vertices so the rank is attained.
pub fn random_hypergraph(
    n: usize,
    edges: usize,
    rank: usize,
    seed: u64,
) -> Result<Hypergraph, GraphError> {
    if rank < 2 || rank > n {
        return Err(GraphError::InvalidParameter(format!(
            "rank {rank} needs 2 <= rank <= n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<usize> = (0..n).collect();
    let list = (0..edges)
        .map(|i| {
            let size = if i == 0 { rank } else { rng.gen_range(2..=rank) };
            vertices.choose_multiple(&mut rng, size).copied().collect()
        })
        .collect();
    Hypergraph::new(n, list)
}

/// Relabels a graph built on `0..n` according to `mode`.
pub fn assign_ids(structure: &Graph, mode: IdMode, seed: u64) -> Graph {
    match mode {
        IdMode::Sequential => structure.clone(),
        IdMode::Random => {
            let n = structure.n() as u64;
            let idspace = n.saturating_mul(n).saturating_mul(n).max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d5_eed);
            let mut used = HashSet::new();
            let mut labels = Vec::with_capacity(n as usize);
            while labels.len() < n as usize {
                let x = rng.gen_range(0..idspace);
                if used.insert(x) {
                    labels.push(NodeId(x));
                }
            }
            let edges = structure.edges().iter().map(|e| {
                (labels[e.lo().0 as usize], labels[e.hi().0 as usize])
            });
            Graph::new(idspace, labels.clone(), edges).expect("relabeling keeps the graph simple")
        }
    }
}
