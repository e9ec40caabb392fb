use congest_rule::diversity::diversity_ruling_set;
use congest_rule::general::{ruling_set_from_ids, two_beta_ruling_set};
use congest_rule::graph::generate::{assign_ids, erdos_renyi, IdMode};
use congest_rule::graph::CliqueEdgeCover;
use congest_rule::ruling_edge::{edge_ruling_to_vertex_ruling, two_ruling_edge_set};
use congest_rule::sim::SimConfig;
use congest_rule::verify::{verify_ruling_edge_set, verify_ruling_set};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = congest_rule::graph::Graph> {
    (2usize..60, 0.0f64..0.3, any::<u64>(), any::<bool>()).prop_map(|(n, p, seed, random)| {
        let mode = if random { IdMode::Random } else { IdMode::Sequential };
        assign_ids(&erdos_renyi(n, p, seed).unwrap(), mode, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_ruling_edge_sets_verify(g in graph()) {
        let run = two_ruling_edge_set(&g, &SimConfig::default()).unwrap();
        let r = run.value.ruling();
        prop_assert!(verify_ruling_edge_set(&g, &r.edges, 2, 2).ok);
        let v = edge_ruling_to_vertex_ruling(&g, r).unwrap();
        prop_assert!(verify_ruling_set(&g, &v.nodes, v.alpha, v.beta).ok);
    }

    #[test]
    fn id_ruling_sets_verify(g in graph(), alpha in 2usize..4, base in 2u64..6) {
        let out = ruling_set_from_ids(&g, alpha, base, &SimConfig::default()).unwrap().value;
        prop_assert!(verify_ruling_set(&g, &out.ruling.nodes, alpha, out.ruling.beta).ok);
    }

    #[test]
    fn two_beta_and_diversity_verify(g in graph(), beta in 2usize..5) {
        let out = two_beta_ruling_set(&g, beta, &SimConfig::default()).unwrap().value;
        prop_assert!(verify_ruling_set(&g, &out.ruling.nodes, 2, beta).ok);
        let q = CliqueEdgeCover::trivial(&g);
        let div = diversity_ruling_set(&g, &q, &SimConfig::default()).unwrap().value;
        prop_assert!(verify_ruling_set(&g, &div.ruling.nodes, 2, q.diversity() + 4).ok);
    }
}
