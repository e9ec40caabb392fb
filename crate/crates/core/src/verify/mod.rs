//! Centralized brute-force checks for every definitional object.
//!
//! Nothing here calls into the distributed code paths: each check is a plain
//! sequential BFS (or exhaustive scan) over the input graph, so the verdicts
//! are independent of the algorithms they judge.

mod dist;
mod plant;

pub use dist::Dist;
pub use plant::plant_ruling_edge_set;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{line_graph, CliqueEdgeCover, EdgeId, Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnknownMember,
    Independence,
    Domination,
    Degree,
    CliqueNotComplete,
    UncoveredNode,
    UncoveredEdge,
    ColorConflict,
    ColorOutOfRange,
    MissingColor,
    MatchingConflict,
    NotMaximal,
    Distance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Node(NodeId),
    Edge(EdgeId),
    Clique(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Vec<Witness>,
    pub measured: Option<Dist>,
    pub required: Option<Dist>,
}

/// Outcome of a check. `ok` holds exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Minimum pairwise distance within the set; infinite for fewer than two members.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_alpha: Option<Dist>,
    /// Largest distance from any element to the set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_beta: Option<Dist>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diversity: Option<usize>,
}

impl Default for Verdict {
    fn default() -> Self {
        Verdict {
            ok: true,
            violations: Vec::new(),
            achieved_alpha: None,
            achieved_beta: None,
            achieved_degree: None,
            diversity: None,
        }
    }
}

impl Verdict {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Verdict { ok: violations.is_empty(), violations, ..Default::default() }
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.ok = false;
    }

    fn absorb(&mut self, other: Verdict) {
        for v in other.violations {
            self.push(v);
        }
    }

    /// One-line human summary of the first few violations.
    pub fn summary(&self) -> String {
        if self.ok {
            return "ok".into();
        }
        let shown: Vec<String> = self
            .violations
            .iter()
            .take(3)
            .map(|v| format!("{:?} {:?}", v.kind, v.witnesses))
            .collect();
        format!("{} violation(s): {}", self.violations.len(), shown.join("; "))
    }
}

fn violation(kind: ViolationKind, witnesses: Vec<Witness>) -> Violation {
    Violation { kind, witnesses, measured: None, required: None }
}

/// Multi-source BFS distances over node indices.
pub fn bfs(g: &Graph, sources: &[usize]) -> Vec<Dist> {
    let mut dist = vec![Dist::Infinite; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] != Dist::Finite(0) {
            dist[s] = Dist::Finite(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u].plus(1);
        for &w in g.neighbors(u) {
            if dist[w] == Dist::Infinite {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Distance from every node to the nearest member of `set`.
pub fn node_distances_to(g: &Graph, set: &BTreeSet<NodeId>) -> BTreeMap<NodeId, Dist> {
    let sources: Vec<usize> = set.iter().filter_map(|&v| g.index_of(v)).collect();
    let dist = bfs(g, &sources);
    g.ids().iter().copied().zip(dist).collect()
}

/// Line-graph distance from every edge to the nearest member of `set`.
pub fn edge_distances_to(g: &Graph, set: &BTreeSet<EdgeId>) -> BTreeMap<EdgeId, Dist> {
    let Ok(l) = line_graph(g) else {
        return BTreeMap::new();
    };
    let sources: Vec<usize> = set.iter().filter_map(|&e| g.edge_rank(e)).collect();
    let dist = bfs(&l, &sources);
    g.edges().iter().copied().zip(dist).collect()
}

/// Checks that `set` is an `(alpha, beta)`-ruling set of `g`.
pub fn verify_ruling_set(g: &Graph, set: &BTreeSet<NodeId>, alpha: usize, beta: usize) -> Verdict {
    let mut verdict = Verdict::default();
    let mut members = Vec::new();
    for &v in set {
        match g.index_of(v) {
            Some(i) => members.push(i),
            None => verdict.push(violation(ViolationKind::UnknownMember, vec![Witness::Node(v)])),
        }
    }
    let (pairs, min_pair) = close_pairs(g, &members, alpha);
    for (a, b, d) in pairs {
        verdict.push(Violation {
            kind: ViolationKind::Independence,
            witnesses: vec![Witness::Node(g.id(a)), Witness::Node(g.id(b))],
            measured: Some(Dist::Finite(d)),
            required: Some(Dist::Finite(alpha)),
        });
    }
    let dist = bfs(g, &members);
    let mut worst = Dist::Finite(0);
    for (i, &d) in dist.iter().enumerate() {
        worst = worst.max(d);
        if d > Dist::Finite(beta) {
            verdict.push(Violation {
                kind: ViolationKind::Domination,
                witnesses: vec![Witness::Node(g.id(i))],
                measured: Some(d),
                required: Some(Dist::Finite(beta)),
            });
        }
    }
    verdict.achieved_alpha = Some(min_pair);
    verdict.achieved_beta = Some(worst);
    verdict
}

/// Pairs of members at distance `< alpha` (each pair once, smaller index
/// first) and the exact minimum pairwise distance.
fn close_pairs(g: &Graph, members: &[usize], alpha: usize) -> (Vec<(usize, usize, usize)>, Dist) {
    let mut is_member = vec![false; g.n()];
    for &m in members {
        is_member[m] = true;
    }
    let mut pairs = Vec::new();
    let mut best = Dist::Infinite;
    let mut seen = vec![usize::MAX; g.n()];
    for &r in members {
        if seen[r] == r {
            continue;
        }
        seen[r] = r;
        let mut level = vec![r];
        let mut depth = 0;
        let mut found = false;
        loop {
            if depth > 0 {
                for &u in &level {
                    if is_member[u] {
                        found = true;
                        best = best.min(Dist::Finite(depth));
                        if depth < alpha && r < u {
                            pairs.push((r, u, depth));
                        }
                    }
                }
            }
            let keep_going = depth + 1 < alpha || (!found && Dist::Finite(depth + 1) < best);
            if !keep_going || level.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for &u in &level {
                for &w in g.neighbors(u) {
                    if seen[w] != r {
                        seen[w] = r;
                        next.push(w);
                    }
                }
            }
            level = next;
            depth += 1;
        }
    }
    (pairs, best)
}

/// Checks that `set` is an `(alpha, beta)`-ruling edge set of `g`, i.e. an
/// `(alpha, beta)`-ruling set of its line graph.
pub fn verify_ruling_edge_set(
    g: &Graph,
    set: &BTreeSet<EdgeId>,
    alpha: usize,
    beta: usize,
) -> Verdict {
    let mut verdict = Verdict::default();
    let mut ranks = BTreeSet::new();
    for &e in set {
        match g.edge_rank(e) {
            Some(r) => {
                ranks.insert(NodeId(r as u64));
            }
            None => verdict.push(violation(ViolationKind::UnknownMember, vec![Witness::Edge(e)])),
        }
    }
    let Ok(l) = line_graph(g) else {
        verdict.achieved_alpha = Some(Dist::Infinite);
        verdict.achieved_beta = Some(Dist::Finite(0));
        return verdict;
    };
    let inner = verify_ruling_set(&l, &ranks, alpha, beta);
    let to_edge = |w: Witness| match w {
        Witness::Node(v) => Witness::Edge(g.edges()[v.0 as usize]),
        other => other,
    };
    for mut v in inner.violations {
        v.witnesses = v.witnesses.into_iter().map(to_edge).collect();
        verdict.push(v);
    }
    verdict.achieved_alpha = inner.achieved_alpha;
    verdict.achieved_beta = inner.achieved_beta;
    verdict
}

/// `F` is a `(d, r)`-edge-kernel: `G[F] = (V, F)` has max degree `<= d` and
/// every edge is within line-graph distance `r` of `F`.
pub fn verify_edge_kernel(g: &Graph, set: &BTreeSet<EdgeId>, d: usize, r: usize) -> Verdict {
    let mut verdict = Verdict::default();
    let mut degree = vec![0usize; g.n()];
    let mut known = BTreeSet::new();
    for &e in set {
        if g.edge_rank(e).is_none() {
            verdict.push(violation(ViolationKind::UnknownMember, vec![Witness::Edge(e)]));
            continue;
        }
        known.insert(e);
        degree[g.index_of(e.lo()).unwrap()] += 1;
        degree[g.index_of(e.hi()).unwrap()] += 1;
    }
    for (i, &k) in degree.iter().enumerate() {
        if k > d {
            verdict.push(Violation {
                kind: ViolationKind::Degree,
                witnesses: vec![Witness::Node(g.id(i))],
                measured: Some(Dist::Finite(k)),
                required: Some(Dist::Finite(d)),
            });
        }
    }
    let dist = edge_distances_to(g, &known);
    let mut worst = Dist::Finite(0);
    for (e, dd) in dist {
        worst = worst.max(dd);
        if dd > Dist::Finite(r) {
            verdict.push(Violation {
                kind: ViolationKind::Domination,
                witnesses: vec![Witness::Edge(e)],
                measured: Some(dd),
                required: Some(Dist::Finite(r)),
            });
        }
    }
    verdict.achieved_degree = Some(degree.into_iter().max().unwrap_or(0));
    verdict.achieved_beta = Some(worst);
    verdict
}

/// `A` is a `(d, r)`-vertex-kernel: `G[A]` has max degree `<= d` and every
/// node is within distance `r` of `A`.
pub fn verify_vertex_kernel(g: &Graph, set: &BTreeSet<NodeId>, d: usize, r: usize) -> Verdict {
    let mut verdict = Verdict::default();
    let mut inside = vec![false; g.n()];
    for &v in set {
        match g.index_of(v) {
            Some(i) => inside[i] = true,
            None => verdict.push(violation(ViolationKind::UnknownMember, vec![Witness::Node(v)])),
        }
    }
    let mut max_deg = 0;
    for i in (0..g.n()).filter(|&i| inside[i]) {
        let k = g.neighbors(i).iter().filter(|&&j| inside[j]).count();
        max_deg = max_deg.max(k);
        if k > d {
            verdict.push(Violation {
                kind: ViolationKind::Degree,
                witnesses: vec![Witness::Node(g.id(i))],
                measured: Some(Dist::Finite(k)),
                required: Some(Dist::Finite(d)),
            });
        }
    }
    let sources: Vec<usize> = (0..g.n()).filter(|&i| inside[i]).collect();
    let mut worst = Dist::Finite(0);
    for (i, dd) in bfs(g, &sources).into_iter().enumerate() {
        worst = worst.max(dd);
        if dd > Dist::Finite(r) {
            verdict.push(Violation {
                kind: ViolationKind::Domination,
                witnesses: vec![Witness::Node(g.id(i))],
                measured: Some(dd),
                required: Some(Dist::Finite(r)),
            });
        }
    }
    verdict.achieved_degree = Some(max_deg);
    verdict.achieved_beta = Some(worst);
    verdict
}

/// Cover validity (cliques complete, all nodes and edges covered) plus the
/// cover's diversity.
pub fn verify_cover(g: &Graph, q: &CliqueEdgeCover) -> Verdict {
    let mut verdict = Verdict::default();
    let mut count: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut covered_edges = BTreeSet::new();
    for (ci, clique) in q.cliques().iter().enumerate() {
        for &v in clique {
            if !g.contains(v) {
                verdict.push(violation(
                    ViolationKind::UnknownMember,
                    vec![Witness::Clique(ci), Witness::Node(v)],
                ));
            }
            *count.entry(v).or_default() += 1;
        }
        for (a, &u) in clique.iter().enumerate() {
            for &w in &clique[a + 1..] {
                if g.has_edge(u, w) {
                    covered_edges.insert(EdgeId::new(u, w));
                } else {
                    verdict.push(violation(
                        ViolationKind::CliqueNotComplete,
                        vec![Witness::Clique(ci), Witness::Node(u), Witness::Node(w)],
                    ));
                }
            }
        }
    }
    for &v in g.ids() {
        if !count.contains_key(&v) {
            verdict.push(violation(ViolationKind::UncoveredNode, vec![Witness::Node(v)]));
        }
    }
    for &e in g.edges() {
        if !covered_edges.contains(&e) {
            verdict.push(violation(ViolationKind::UncoveredEdge, vec![Witness::Edge(e)]));
        }
    }
    verdict.diversity = Some(count.values().copied().max().unwrap_or(0));
    verdict
}

/// Every node has a color below `num_colors`, and nodes at distance
/// `1..=power` have different colors.
pub fn verify_coloring(
    g: &Graph,
    colors: &BTreeMap<NodeId, u64>,
    num_colors: u64,
    power: usize,
) -> Verdict {
    let mut verdict = Verdict::default();
    let mut color = vec![None; g.n()];
    for (i, &v) in g.ids().iter().enumerate() {
        match colors.get(&v) {
            None => verdict.push(violation(ViolationKind::MissingColor, vec![Witness::Node(v)])),
            Some(&c) => {
                if c >= num_colors {
                    verdict.push(violation(ViolationKind::ColorOutOfRange, vec![Witness::Node(v)]));
                }
                color[i] = Some(c);
            }
        }
    }
    for s in 0..g.n() {
        let Some(cs) = color[s] else { continue };
        let mut depth = vec![usize::MAX; g.n()];
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if depth[u] == power {
                continue;
            }
            for &w in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                    if w > s && color[w] == Some(cs) {
                        verdict.push(Violation {
                            kind: ViolationKind::ColorConflict,
                            witnesses: vec![Witness::Node(g.id(s)), Witness::Node(g.id(w))],
                            measured: Some(Dist::Finite(depth[w])),
                            required: Some(Dist::Finite(power + 1)),
                        });
                    }
                }
            }
        }
    }
    verdict
}

/// No two matching edges share an endpoint and every edge of `g` has a
/// matched endpoint.
pub fn verify_matching(g: &Graph, m: &BTreeSet<EdgeId>) -> Verdict {
    let mut violations = Vec::new();
    let mut owner: BTreeMap<NodeId, EdgeId> = BTreeMap::new();
    for &e in m {
        if g.edge_rank(e).is_none() {
            violations.push(violation(ViolationKind::UnknownMember, vec![Witness::Edge(e)]));
            continue;
        }
        for v in [e.lo(), e.hi()] {
            if let Some(&f) = owner.get(&v) {
                violations.push(violation(
                    ViolationKind::MatchingConflict,
                    vec![Witness::Edge(f), Witness::Edge(e)],
                ));
            } else {
                owner.insert(v, e);
            }
        }
    }
    for &e in g.edges() {
        if !owner.contains_key(&e.lo()) && !owner.contains_key(&e.hi()) {
            violations.push(violation(ViolationKind::NotMaximal, vec![Witness::Edge(e)]));
        }
    }
    Verdict::from_violations(violations)
}

/// For every pair of incident edges `e, f`: `|dist(e, R) - dist(f, R)| <= 1`.
pub fn verify_incident_distance_gap(g: &Graph, set: &BTreeSet<EdgeId>) -> Verdict {
    let dist = edge_distances_to(g, set);
    let mut violations = Vec::new();
    for i in 0..g.n() {
        let inc: Vec<EdgeId> =
            g.neighbor_ids(i).map(|w| EdgeId::new(g.id(i), w)).collect();
        for (a, e) in inc.iter().enumerate() {
            for f in &inc[a + 1..] {
                let (de, df) = (dist[e], dist[f]);
                let bad = match (de, df) {
                    (Dist::Finite(x), Dist::Finite(y)) => x.abs_diff(y) > 1,
                    (Dist::Infinite, Dist::Infinite) => false,
                    _ => true,
                };
                if bad {
                    violations.push(violation(
                        ViolationKind::Distance,
                        vec![Witness::Edge(*e), Witness::Edge(*f)],
                    ));
                }
            }
        }
    }
    Verdict::from_violations(violations)
}

/// Combines several verdicts; `ok` only if all are.
pub fn all_of(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::default();
    for v in verdicts {
        out.absorb(v);
    }
    out
}
