//! Experiment runner: algorithm dispatch, certificates, records and the
//! exhaustive small-graph sweep.

mod enumerate;
mod sweep;

pub use enumerate::{connected_graphs, connected_graphs_up_to};
pub use sweep::{exhaustive_sweep, sweep_plan, SweepFailure, SweepReport};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::diversity::{diversity_ruling_set, hypergraph_edge_ruling_set};
use crate::error::{Error, Result};
use crate::general::{ruling_set_from_ids, two_beta_ruling_set};
use crate::graph::{hyper_line_graph_with_cover, CliqueEdgeCover, EdgeId, Graph, Hypergraph, NodeId};
use crate::ruling_edge::{propose_edge_kernel, reduce_beta_to_2, three_ruling_edge_set, two_ruling_edge_set};
use crate::sim::{RunStats, SimConfig, Traced};
use crate::symmetry::maximal_matching_bounded_degree;
use crate::verify::{plant_ruling_edge_set, verify_edge_kernel, verify_ruling_edge_set, verify_ruling_set, Dist, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    ProposeEdgeKernel,
    MaximalMatching,
    ThreeRulingEdgeSet,
    TwoRulingEdgeSet,
    /// Plants a ruling edge set with target `beta`, then reduces it to 2.
    #[serde(rename = "reduce_beta_to_2")]
    ReduceBetaTo2,
    RulingSetFromIds,
    TwoBetaRulingSet,
    DiversityRulingSet,
    HypergraphEdgeRulingSet,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::ProposeEdgeKernel,
        Algorithm::MaximalMatching,
        Algorithm::ThreeRulingEdgeSet,
        Algorithm::TwoRulingEdgeSet,
        Algorithm::ReduceBetaTo2,
        Algorithm::RulingSetFromIds,
        Algorithm::TwoBetaRulingSet,
        Algorithm::DiversityRulingSet,
        Algorithm::HypergraphEdgeRulingSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ProposeEdgeKernel => "propose_edge_kernel",
            Algorithm::MaximalMatching => "maximal_matching",
            Algorithm::ThreeRulingEdgeSet => "three_ruling_edge_set",
            Algorithm::TwoRulingEdgeSet => "two_ruling_edge_set",
            Algorithm::ReduceBetaTo2 => "reduce_beta_to_2",
            Algorithm::RulingSetFromIds => "ruling_set_from_ids",
            Algorithm::TwoBetaRulingSet => "two_beta_ruling_set",
            Algorithm::DiversityRulingSet => "diversity_ruling_set",
            Algorithm::HypergraphEdgeRulingSet => "hypergraph_edge_ruling_set",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?}")))
    }
}

/// Algorithm parameters; unset values take the documented defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Params {
    /// Independence for `ruling_set_from_ids` (default 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    /// Base for `ruling_set_from_ids` (default 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
    /// Target for `two_beta_ruling_set` (default 3) and the planted input of
    /// `reduce_beta_to_2` (default 5).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

/// Input to an experiment.
#[derive(Debug, Clone)]
pub enum Instance {
    Graph { graph: Graph, cover: Option<CliqueEdgeCover> },
    Hypergraph(Hypergraph),
}

impl Instance {
    pub fn graph(graph: Graph) -> Self {
        Instance::Graph { graph, cover: None }
    }

    pub fn describe(&self) -> GraphDescriptor {
        match self {
            Instance::Graph { graph, .. } => GraphDescriptor {
                kind: "graph".into(),
                n: graph.n(),
                idspace: graph.idspace(),
                edges: graph.edge_count(),
                max_degree: graph.max_degree(),
                rank: None,
            },
            Instance::Hypergraph(h) => {
                let (line, _) = hyper_line_graph_with_cover(h);
                GraphDescriptor {
                    kind: "hypergraph".into(),
                    n: h.n(),
                    idspace: line.idspace(),
                    edges: h.edges().len(),
                    max_degree: line.max_degree(),
                    rank: Some(h.rank()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub kind: String,
    pub n: usize,
    /// ID space of the simulated network (the line graph for hypergraphs).
    pub idspace: u64,
    pub edges: usize,
    /// Max degree of the simulated network.
    pub max_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

/// A claimed output, checkable against its input by the oracles. Vertex
/// certificates of a hypergraph list hyperedge indices, i.e. nodes of the
/// line graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Edge { alpha: usize, beta: usize, edges: Vec<[u64; 2]> },
    Vertex { alpha: usize, beta: usize, nodes: Vec<u64> },
    EdgeKernel { d: usize, r: usize, edges: Vec<[u64; 2]> },
}

fn edge_list(edges: &BTreeSet<EdgeId>) -> Vec<[u64; 2]> {
    edges.iter().map(|e| [e.lo().0, e.hi().0]).collect()
}

fn edge_set(edges: &[[u64; 2]]) -> Result<BTreeSet<EdgeId>> {
    edges
        .iter()
        .map(|&[a, b]| {
            if a == b {
                Err(Error::InvalidParameter(format!("self-loop [{a}, {b}] in certificate")))
            } else {
                Ok(EdgeId::new(NodeId(a), NodeId(b)))
            }
        })
        .collect()
}

impl Certificate {
    pub fn alpha(&self) -> Option<usize> {
        match self {
            Certificate::Edge { alpha, .. } | Certificate::Vertex { alpha, .. } => Some(*alpha),
            Certificate::EdgeKernel { .. } => None,
        }
    }

    /// Claimed domination bound.
    pub fn beta(&self) -> usize {
        match self {
            Certificate::Edge { beta, .. } | Certificate::Vertex { beta, .. } => *beta,
            Certificate::EdgeKernel { r, .. } => *r,
        }
    }
}

/// Checks a certificate with the centralized oracles.
pub fn verify_certificate(instance: &Instance, cert: &Certificate) -> Result<Verdict> {
    match (instance, cert) {
        (Instance::Graph { graph, .. }, Certificate::Edge { alpha, beta, edges }) => {
            Ok(verify_ruling_edge_set(graph, &edge_set(edges)?, *alpha, *beta))
        }
        (Instance::Graph { graph, .. }, Certificate::EdgeKernel { d, r, edges }) => {
            Ok(verify_edge_kernel(graph, &edge_set(edges)?, *d, *r))
        }
        (Instance::Graph { graph, .. }, Certificate::Vertex { alpha, beta, nodes }) => {
            Ok(verify_ruling_set(graph, &nodes.iter().map(|&v| NodeId(v)).collect(), *alpha, *beta))
        }
        (Instance::Hypergraph(h), Certificate::Vertex { alpha, beta, nodes }) => {
            let (line, _) = hyper_line_graph_with_cover(h);
            Ok(verify_ruling_set(&line, &nodes.iter().map(|&v| NodeId(v)).collect(), *alpha, *beta))
        }
        (Instance::Hypergraph(_), _) => {
            Err(Error::InvalidParameter("hypergraph certificates must be vertex sets of the line graph".into()))
        }
    }
}

/// One algorithm run together with its oracle verdict. Achieved values come
/// from the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub graph: GraphDescriptor,
    pub algorithm: Algorithm,
    pub params: Params,
    /// Base of the digit splitting, where one is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
    pub rounds_used: usize,
    pub max_message_bits: usize,
    pub cap_bits: Option<usize>,
    /// Set when the run did not enforce the message cap.
    pub cap_exempt: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_claimed: Option<usize>,
    pub beta_claimed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_alpha: Option<Dist>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_beta: Option<Dist>,
    pub verdict: Verdict,
    pub wallclock_ms: f64,
}

struct Outcome {
    cert: Certificate,
    stats: RunStats,
    cap_bits: Option<usize>,
    base: Option<u64>,
}

fn outcome<T>(t: Traced<T>, base: Option<u64>, cert: impl FnOnce(T) -> Certificate) -> Outcome {
    Outcome { stats: t.stats, cap_bits: t.cap_bits, base, cert: cert(t.value) }
}

fn edge_cert(alpha: usize, beta: usize, edges: &BTreeSet<EdgeId>) -> Certificate {
    Certificate::Edge { alpha, beta, edges: edge_list(edges) }
}

fn vertex_cert(alpha: usize, beta: usize, nodes: &BTreeSet<NodeId>) -> Certificate {
    Certificate::Vertex { alpha, beta, nodes: nodes.iter().map(|v| v.0).collect() }
}

fn run_hyper(h: &Hypergraph, config: &SimConfig) -> Result<Outcome> {
    let t = hypergraph_edge_ruling_set(h, config)?;
    let base = Some(t.value.run.inner.digits.base);
    Ok(outcome(t, base, |v| Certificate::Vertex {
        alpha: v.ruling.alpha,
        beta: v.ruling.beta,
        nodes: v.ruling.edges.iter().map(|&e| e as u64).collect(),
    }))
}

fn run_graph(
    g: &Graph,
    cover: Option<&CliqueEdgeCover>,
    algo: Algorithm,
    params: &Params,
    config: &SimConfig,
) -> Result<Outcome> {
    Ok(match algo {
        Algorithm::ProposeEdgeKernel => outcome(propose_edge_kernel(g, config)?, None, |k| {
            Certificate::EdgeKernel { d: k.d, r: k.r, edges: edge_list(&k.edges) }
        }),
        Algorithm::MaximalMatching => {
            outcome(maximal_matching_bounded_degree(g, config)?, None, |m| edge_cert(2, 1, &m.edges))
        }
        Algorithm::ThreeRulingEdgeSet => {
            outcome(three_ruling_edge_set(g, config)?, None, |p| edge_cert(2, 3, &p.ruling().edges))
        }
        Algorithm::TwoRulingEdgeSet => {
            outcome(two_ruling_edge_set(g, config)?, None, |p| edge_cert(2, 2, &p.ruling().edges))
        }
        Algorithm::ReduceBetaTo2 => {
            if g.edge_count() == 0 {
                return Err(Error::InvalidParameter("reduce_beta_to_2 needs at least one edge".into()));
            }
            let planted = plant_ruling_edge_set(g, params.beta.unwrap_or(5), params.seed);
            let t = reduce_beta_to_2(g, &planted.edges, planted.beta.max(2), config)?;
            outcome(t, None, |r| edge_cert(2, r.ruling.beta, &r.ruling.edges))
        }
        Algorithm::RulingSetFromIds => {
            let t = ruling_set_from_ids(g, params.alpha.unwrap_or(2), params.base.unwrap_or(2), config)?;
            let base = Some(t.value.digits.base);
            outcome(t, base, |r| vertex_cert(r.ruling.alpha, r.ruling.beta, &r.ruling.nodes))
        }
        Algorithm::TwoBetaRulingSet => {
            let beta = params.beta.unwrap_or(3);
            let t = two_beta_ruling_set(g, beta, config)?;
            let base = Some(t.value.digits.base);
            outcome(t, base, |r| vertex_cert(2, beta, &r.ruling.nodes))
        }
        Algorithm::DiversityRulingSet => {
            let trivial;
            let q = match cover {
                Some(q) => q,
                None => {
                    trivial = CliqueEdgeCover::trivial(g);
                    &trivial
                }
            };
            let t = diversity_ruling_set(g, q, config)?;
            let base = Some(t.value.inner.digits.base);
            outcome(t, base, |r| vertex_cert(2, r.ruling.beta, &r.ruling.nodes))
        }
        Algorithm::HypergraphEdgeRulingSet => {
            return Err(Error::InvalidParameter("hypergraph_edge_ruling_set needs a hypergraph".into()))
        }
    })
}

/// Runs `algo` on `instance`, then checks the certificate with the oracle.
/// On a hypergraph both diversity algorithms run on the line graph.
pub fn run_experiment(
    instance: &Instance,
    algo: Algorithm,
    params: &Params,
    config: &SimConfig,
) -> Result<(Certificate, ExperimentRecord)> {
    let start = Instant::now();
    let out = match instance {
        Instance::Graph { graph, cover } => run_graph(graph, cover.as_ref(), algo, params, config)?,
        Instance::Hypergraph(h) => match algo {
            Algorithm::DiversityRulingSet | Algorithm::HypergraphEdgeRulingSet => run_hyper(h, config)?,
            _ => return Err(Error::InvalidParameter(format!("{algo} needs a graph, not a hypergraph"))),
        },
    };
    let wallclock_ms = start.elapsed().as_secs_f64() * 1000.0;
    let verdict = verify_certificate(instance, &out.cert)?;
    let record = ExperimentRecord {
        graph: instance.describe(),
        algorithm: algo,
        params: *params,
        base: out.base,
        rounds_used: out.stats.rounds_used,
        max_message_bits: out.stats.max_message_bits,
        cap_bits: out.cap_bits,
        cap_exempt: out.cap_bits.is_none(),
        alpha_claimed: out.cert.alpha(),
        beta_claimed: out.cert.beta(),
        achieved_alpha: verdict.achieved_alpha,
        achieved_beta: verdict.achieved_beta,
        verdict,
        wallclock_ms,
    };
    Ok((out.cert, record))
}
