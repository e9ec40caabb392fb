use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{connected_graphs_up_to, run_experiment, Algorithm, Instance, Params};
use crate::graph::generate::{assign_ids, IdMode};
use crate::graph::json::GraphJson;
use crate::graph::Graph;
use crate::sim::SimConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub graph: GraphJson,
    pub algorithm: Algorithm,
    pub params: Params,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepReport {
    /// Distinct structures (before ID assignment).
    pub graphs: usize,
    pub runs: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Algorithm and parameter combinations applied to every swept graph.
pub fn sweep_plan() -> Vec<(Algorithm, Params)> {
    let mut plan = vec![
        (Algorithm::ProposeEdgeKernel, Params::default()),
        (Algorithm::MaximalMatching, Params::default()),
        (Algorithm::ThreeRulingEdgeSet, Params::default()),
        (Algorithm::TwoRulingEdgeSet, Params::default()),
        (Algorithm::DiversityRulingSet, Params::default()),
    ];
    for alpha in [2, 3] {
        for base in [2, 3] {
            plan.push((Algorithm::RulingSetFromIds, Params { alpha: Some(alpha), base: Some(base), ..Params::default() }));
        }
    }
    for beta in [2, 3, 4] {
        plan.push((Algorithm::TwoBetaRulingSet, Params { beta: Some(beta), ..Params::default() }));
    }
    plan.push((Algorithm::ReduceBetaTo2, Params { beta: Some(4), ..Params::default() }));
    plan
}

fn check(g: &Graph, algo: Algorithm, params: &Params, config: &SimConfig) -> Option<String> {
    if algo == Algorithm::ReduceBetaTo2 && g.edge_count() == 0 {
        return None;
    }
    match run_experiment(&Instance::graph(g.clone()), algo, params, config) {
        Ok((_, record)) if record.verdict.ok => None,
        Ok((_, record)) => Some(record.verdict.summary()),
        Err(e) => Some(e.to_string()),
    }
}

/// Every connected graph on at most `max_n` nodes, with sequential and with
/// random IDs, through every plan entry; each output is oracle-checked.
pub fn exhaustive_sweep(max_n: usize, seed: u64, config: &SimConfig) -> SweepReport {
    let structures = connected_graphs_up_to(max_n);
    let plan = sweep_plan();
    let graphs: Vec<Graph> = structures
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [IdMode::Sequential, IdMode::Random].map(|mode| assign_ids(g, mode, seed.wrapping_add(i as u64)))
        })
        .collect();
    let failures: Vec<SweepFailure> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            plan.iter().filter_map(move |(algo, params)| {
                check(g, *algo, params, config).map(|detail| SweepFailure {
                    graph: GraphJson::from(g),
                    algorithm: *algo,
                    params: *params,
                    detail,
                })
            })
        })
        .collect();
    SweepReport { graphs: structures.len(), runs: graphs.len() * plan.len(), failures }
}
