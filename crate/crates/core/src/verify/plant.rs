use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{bfs, verify_ruling_edge_set, Dist};
use crate::graph::{line_graph, Graph};
use crate::sets::RulingEdgeSet;

/// Greedy sequential construction of a sparse ruling edge set.
///
/// Edges are visited in a seeded order. The first pick in every component is
/// the edge farthest from the first unvisited edge of that component; after
/// that, while some edge is farther than `target_beta` from the set, the first
/// edge (in seeded order) at distance exactly `target_beta + 1` is added. The
/// result is `(2, beta')`-ruling with `beta' <= target_beta`; `beta'` is
/// measured by the oracle, never assumed.
///
/// `target_beta = 1` yields a maximal matching. Edgeless graphs give the empty set.
pub fn plant_ruling_edge_set(g: &Graph, target_beta: usize, seed: u64) -> RulingEdgeSet {
    let target = target_beta.max(1);
    let Ok(l) = line_graph(g) else {
        return RulingEdgeSet { edges: BTreeSet::new(), alpha: 2, beta: 0 };
    };
    let mut order: Vec<usize> = (0..l.n()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut dist = vec![Dist::Infinite; l.n()];
    let mut chosen = Vec::new();
    loop {
        let pick = match order.iter().find(|&&e| dist[e] == Dist::Finite(target + 1)) {
            Some(&e) => e,
            None => match order.iter().find(|&&e| dist[e] == Dist::Infinite) {
                Some(&start) => farthest(&l, start, &order),
                None => break,
            },
        };
        chosen.push(pick);
        relax(&l, pick, &mut dist);
    }

    let edges: BTreeSet<_> = chosen.into_iter().map(|e| g.edges()[e]).collect();
    let verdict = verify_ruling_edge_set(g, &edges, 2, target);
    debug_assert!(verdict.ok, "planted set failed: {}", verdict.summary());
    let beta = verdict.achieved_beta.and_then(Dist::finite).unwrap_or(target);
    RulingEdgeSet { edges, alpha: 2, beta }
}

/// The node of `start`'s component farthest from it, first in `order` on ties.
fn farthest(l: &Graph, start: usize, order: &[usize]) -> usize {
    let d = bfs(l, &[start]);
    let best = order.iter().filter_map(|&e| d[e].finite()).max().unwrap_or(0);
    *order.iter().find(|&&e| d[e] == Dist::Finite(best)).unwrap()
}

/// Lowers `dist` to account for a new source `s`.
fn relax(l: &Graph, s: usize, dist: &mut [Dist]) {
    dist[s] = Dist::Finite(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u].plus(1);
        for &w in l.neighbors(u) {
            if next < dist[w] {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}
