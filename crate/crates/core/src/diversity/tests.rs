use super::*;
use crate::graph::generate::{assign_ids, complete, d_regular, erdos_renyi, path, random_hypergraph, ring, IdMode};
use crate::verify::{node_distances_to, verify_ruling_edge_set, Dist};

fn cfg() -> SimConfig {
    SimConfig::default()
}

fn nodes(ids: &[u64]) -> BTreeSet<NodeId> {
    ids.iter().map(|&v| NodeId(v)).collect()
}

fn cover(cliques: &[&[u64]]) -> CliqueEdgeCover {
    CliqueEdgeCover::new(cliques.iter().map(|c| c.iter().map(|&v| NodeId(v)).collect()).collect())
}

/// Phase-level properties of a proposal run, checked against the oracle.
fn check_trace(g: &Graph, q: &CliqueEdgeCover, t: &ProposalTrace) {
    let d = q.diversity();
    assert_eq!(t.phases.len(), d);
    let mut active: BTreeSet<NodeId> = g.ids().iter().copied().collect();
    for (i, phase) in t.phases.iter().enumerate() {
        assert!(phase.proposed.is_subset(&active));
        if i > 0 {
            assert!(phase.proposed.is_subset(&t.phases[i - 1].proposed), "S must shrink");
        }
        for &v in active.difference(&phase.active) {
            let idx = g.index_of(v).unwrap();
            assert!(g.neighbor_ids(idx).any(|w| phase.proposed.contains(&w)), "{v} left without cause");
        }
        assert!(phase.active.is_subset(&active));
        assert!(phase.proposed.is_subset(&phase.active));
        let worst = node_distances_to(g, &phase.active).into_values().max().unwrap_or(Dist::Finite(0));
        assert!(worst <= Dist::Finite(i + 1), "phase {i}: domination {worst:?}");
        active = phase.active.clone();
    }
    assert_eq!(active, t.kernel.nodes);
    for (c, members) in q.cliques().iter().enumerate() {
        assert!(members.iter().filter(|v| active.contains(v)).count() <= d.max(1));
        assert!(t.history.get(&c).map_or(0, Vec::len) <= d);
    }
    let v = verify_vertex_kernel(g, &t.kernel.nodes, d * d.saturating_sub(1), d);
    assert!(v.ok, "{}", v.summary());
}

#[test]
fn triangle_example() {
    let g = complete(3);
    let q = cover(&[&[0, 1, 2]]);
    let run = diversity_proposal(&g, &q, &cfg()).unwrap();
    assert_eq!(run.value.kernel.nodes, nodes(&[0]));
    assert_eq!((run.value.kernel.d, run.value.kernel.r), (1, 1));
    assert_eq!(run.rounds_used(), ROUNDS_PER_PHASE + 1);
    check_trace(&g, &q, &run.value);

    let full = diversity_ruling_set(&g, &q, &cfg()).unwrap().value;
    assert_eq!(full.ruling.nodes, nodes(&[0]));
    assert_eq!(full.ruling.beta, 5);
}

#[test]
fn path_example() {
    let g = path(3);
    let q = cover(&[&[0, 1], &[1, 2]]);
    let t = diversity_proposal(&g, &q, &cfg()).unwrap().value;
    assert_eq!(t.phases[0].proposed, nodes(&[0, 1]));
    assert_eq!(t.phases[0].active, nodes(&[0, 1]));
    assert_eq!(t.phases[1].proposed, nodes(&[1]));
    assert_eq!(t.kernel.nodes, nodes(&[1]));
    assert_eq!(t.history[&0], vec![NodeId(0), NodeId(1)]);
    assert_eq!(t.history[&1], vec![NodeId(1)]);
    assert!(verify_vertex_kernel(&g, &t.kernel.nodes, 4, 2).ok);
    check_trace(&g, &q, &t);

    let inner = |_: &Graph| Ok(RulingSet { nodes: nodes(&[1]), alpha: 2, beta: 0 });
    let r = ruling_from_vertex_kernel(&g, &t.kernel, inner).unwrap();
    assert_eq!(r.beta, 2);
    assert!(verify_ruling_set(&g, &r.nodes, 2, 2).ok);
}

#[test]
fn edgeless_graph_keeps_everyone() {
    let g = Graph::sequential(4, []).unwrap();
    let q = CliqueEdgeCover::trivial(&g);
    let t = diversity_proposal(&g, &q, &cfg()).unwrap().value;
    assert_eq!(t.kernel.nodes.len(), 4);
    assert_eq!(t.phases[0].proposed.len(), 4);
}

#[test]
fn kernel_composition_examples() {
    let c6 = ring(6);
    let all = VertexKernel { nodes: c6.ids().iter().copied().collect(), d: 2, r: 0 };
    let inner = |sub: &Graph| Ok(crate::general::two_beta_ruling_set(sub, 2, &cfg())?.value.ruling);
    let r = ruling_from_vertex_kernel(&c6, &all, inner).unwrap();
    assert_eq!(r.beta, 2);
    assert!(verify_ruling_set(&c6, &r.nodes, 2, 2).ok);

    let planted = VertexKernel { nodes: nodes(&[0, 2, 4]), d: 4, r: 1 };
    let mis = |sub: &Graph| Ok(RulingSet { nodes: sub.ids().iter().copied().collect(), alpha: 2, beta: 0 });
    let r = ruling_from_vertex_kernel(&c6, &planted, mis).unwrap();
    assert_eq!((r.nodes.clone(), r.beta), (nodes(&[0, 2, 4]), 1));
    assert!(verify_ruling_set(&c6, &r.nodes, 2, 1).ok);

    let bad = |_: &Graph| Ok(RulingSet { nodes: nodes(&[0]), alpha: 2, beta: 0 });
    assert!(ruling_from_vertex_kernel(&c6, &planted, bad).is_err());
}

#[test]
fn complete_graph_gives_singleton() {
    let g = complete(8);
    let q = cover(&[&[0, 1, 2, 3, 4, 5, 6, 7]]);
    let run = diversity_ruling_set(&g, &q, &cfg()).unwrap().value;
    assert_eq!(run.ruling.nodes.len(), 1);
    assert!(verify_ruling_set(&g, &run.ruling.nodes, 2, 5).ok);
}

#[test]
fn rejects_invalid_cover() {
    let g = path(3);
    let q = cover(&[&[0, 1]]);
    assert!(diversity_proposal(&g, &q, &cfg()).is_err());
    assert!(diversity_ruling_set(&g, &q, &cfg()).is_err());
}

#[test]
fn trivial_covers_on_random_graphs() {
    for seed in 0..40u64 {
        let g = match seed % 3 {
            0 => erdos_renyi(40, 0.08, seed).unwrap(),
            1 => d_regular(30, 3, seed).unwrap(),
            _ => ring(20 + seed as usize),
        };
        let g = assign_ids(&g, if seed % 2 == 0 { IdMode::Sequential } else { IdMode::Random }, seed);
        let q = CliqueEdgeCover::trivial(&g);
        let run = diversity_ruling_set(&g, &q, &cfg()).unwrap();
        check_trace(&g, &q, &run.value.proposal);
        let d = q.diversity();
        let v = verify_ruling_set(&g, &run.value.ruling.nodes, 2, d + 4);
        assert!(v.ok, "seed {seed}: {}", v.summary());
        assert!(run.max_message_bits() <= 8 * g.id_bits() as usize);
    }
}

#[test]
fn hypergraph_examples() {
    let single = Hypergraph::new(4, vec![vec![0, 1, 2]]).unwrap();
    let out = hypergraph_edge_ruling_set(&single, &cfg()).unwrap().value;
    assert_eq!(out.ruling.edges, BTreeSet::from([0]));
    assert_eq!(out.ruling.beta, 7);

    // A simple graph as a rank-2 hypergraph: cross-check with the edge verifier.
    let g = erdos_renyi(30, 0.1, 2).unwrap();
    let h = Hypergraph::new(g.n(), g.edges().iter().map(|e| vec![e.lo().0 as usize, e.hi().0 as usize]).collect())
        .unwrap();
    let out = hypergraph_edge_ruling_set(&h, &cfg()).unwrap().value;
    assert_eq!(out.ruling.beta, 6);
    let edges = out.ruling.edges.iter().map(|&i| g.edges()[i]).collect();
    assert!(verify_ruling_edge_set(&g, &edges, 2, 6).ok);

    for (rank, n, m, seed) in [(3, 40, 50, 1), (5, 60, 80, 3)] {
        let h = random_hypergraph(n, m, rank, seed).unwrap();
        let (line, q) = hyper_line_graph_with_cover(&h);
        let out = hypergraph_edge_ruling_set(&h, &cfg()).unwrap().value;
        assert_eq!(out.ruling.beta, rank + 4);
        let set = out.ruling.edges.iter().map(|&i| NodeId(i as u64)).collect();
        let v = verify_ruling_set(&line, &set, 2, rank + 4);
        assert!(v.ok, "rank {rank}: {}", v.summary());
        check_trace(&line, &q, &out.run.proposal);
    }
}
