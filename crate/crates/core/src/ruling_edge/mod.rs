//! Ruling edge sets: the proposal kernel, the kernel-plus-matching pipeline
//! and the domination reductions.

mod kernel;
mod reduce;

pub use kernel::{Propose, ProposeState};
pub use reduce::{Reduce, ReduceOutput, ReduceState, CLASS_CAP, ROUNDS_PER_ITERATION};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{require, Error, Result};
use crate::graph::{edge_subgraph, EdgeId, Graph, NodeId};
use crate::sets::{edges_from_endpoints, EdgeKernel, RulingEdgeSet, RulingSet};
use crate::sim::{run, Carry, NodeContext, Scheduled, SimConfig, Then, Traced};
use crate::symmetry::matching_protocol;
use crate::verify::{verify_edge_kernel, verify_ruling_edge_set};

fn ports_in(ctx: &NodeContext, set: &BTreeSet<EdgeId>) -> Vec<usize> {
    (0..ctx.degree()).filter(|&p| set.contains(&EdgeId::new(ctx.id, ctx.neighbor(p)))).collect()
}

/// Computes a (2, 2)-edge-kernel in exactly two rounds.
pub fn propose_edge_kernel(g: &Graph, config: &SimConfig) -> Result<Traced<EdgeKernel>> {
    let program = Scheduled::new(Propose, |_: &NodeContext| ());
    let report = run(g, &program, config)?;
    let ids = |v: NodeId, ports: &[usize]| -> Vec<NodeId> {
        let i = g.index_of(v).expect("output for a known node");
        ports.iter().map(|&p| g.id(g.neighbors(i)[p])).collect()
    };
    report.trace(|outs| {
        let reports = outs.iter().map(|(&v, ports)| (v, ids(v, ports))).collect();
        Ok(EdgeKernel { edges: edges_from_endpoints(&reports)?, d: 2, r: 2 })
    })
}

/// Lifts a ruling edge set of `G[F]` to `g`: a `(2, r2)`-ruling set of the
/// kernel's subgraph is `(2, kernel.r + r2)`-ruling on `g`.
pub fn ruling_edge_from_kernel(
    g: &Graph,
    kernel: &EdgeKernel,
    inner: impl FnOnce(&Graph) -> Result<RulingEdgeSet>,
) -> Result<RulingEdgeSet> {
    require("edge kernel", verify_edge_kernel(g, &kernel.edges, kernel.d, kernel.r))?;
    let sub = edge_subgraph(g, &kernel.edges)?;
    let r = inner(&sub)?;
    require("inner ruling edge set on G[F]", verify_ruling_edge_set(&sub, &r.edges, 2, r.beta))?;
    Ok(RulingEdgeSet { edges: r.edges, alpha: 2, beta: kernel.r + r.beta })
}

/// Intermediate sets of the kernel-matching-reduction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePipeline {
    pub kernel: EdgeKernel,
    /// Maximal matching of `G[F]`: (2, 3)-ruling on the input graph.
    pub three: RulingEdgeSet,
    /// Present when the 3-to-2 reduction ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two: Option<Reduction>,
}

impl EdgePipeline {
    pub fn ruling(&self) -> &RulingEdgeSet {
        self.two.as_ref().map_or(&self.three, |r| &r.ruling)
    }
}

/// Result of the domination reductions with per-iteration snapshots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub ruling: RulingEdgeSet,
    /// Set after each iteration.
    pub stages: Vec<BTreeSet<EdgeId>>,
    /// Edge classes computed at the start of each iteration.
    pub classes: Vec<BTreeMap<EdgeId, u8>>,
}

fn assemble_reduction(
    g: &Graph,
    input: &BTreeSet<EdgeId>,
    beta: usize,
    outs: &BTreeMap<NodeId, ReduceOutput>,
) -> Result<Reduction> {
    let iterations = outs.values().map(|o| o.stages.len()).max().unwrap_or(0);
    let mut stages = Vec::with_capacity(iterations);
    let mut classes = Vec::with_capacity(iterations);
    for it in 0..iterations {
        let mut reports = BTreeMap::new();
        let mut class = BTreeMap::new();
        for (&v, o) in outs {
            let i = g.index_of(v).expect("known node");
            let nbr = |p: usize| g.id(g.neighbors(i)[p]);
            reports.insert(v, o.stages[it].iter().map(|&p| nbr(p)).collect::<Vec<_>>());
            for (p, &c) in o.classes[it].iter().enumerate() {
                let e = EdgeId::new(v, nbr(p));
                if *class.entry(e).or_insert(c) != c {
                    return Err(Error::EdgeDisagreement(e));
                }
            }
        }
        stages.push(edges_from_endpoints(&reports)?);
        classes.push(class);
    }
    let edges = stages.last().cloned().unwrap_or_else(|| input.clone());
    Ok(Reduction { ruling: RulingEdgeSet { edges, alpha: 2, beta }, stages, classes })
}

fn reduce_run(
    g: &Graph,
    r: &BTreeSet<EdgeId>,
    iterations: usize,
    beta_out: usize,
    config: &SimConfig,
) -> Result<Traced<Reduction>> {
    let program = Scheduled::new(Reduce { iterations }, |ctx: &NodeContext| ports_in(ctx, r));
    let report = run(g, &program, config)?;
    report.trace(|outs| assemble_reduction(g, r, beta_out, &outs))
}

/// One reduction iteration on a (2, 3)-ruling edge set, giving (2, 2).
pub fn reduce_3_to_2(g: &Graph, r3: &RulingEdgeSet, config: &SimConfig) -> Result<Traced<Reduction>> {
    require("input is (2, 3)-ruling", verify_ruling_edge_set(g, &r3.edges, 2, 3))?;
    reduce_run(g, &r3.edges, 1, 2, config)
}

/// One reduction iteration: (2, beta) becomes (2, beta - 1), for beta >= 3.
pub fn reduce_beta_by_one(
    g: &Graph,
    r: &RulingEdgeSet,
    config: &SimConfig,
) -> Result<Traced<Reduction>> {
    if r.beta < 3 {
        return Err(Error::InvalidParameter(format!("beta {} < 3", r.beta)));
    }
    require("input ruling edge set", verify_ruling_edge_set(g, &r.edges, 2, r.beta))?;
    reduce_run(g, &r.edges, 1, r.beta - 1, config)
}

/// `beta_bound - 2` reduction iterations, in `5 * (beta_bound - 2)` rounds.
pub fn reduce_beta_to_2(
    g: &Graph,
    r: &BTreeSet<EdgeId>,
    beta_bound: usize,
    config: &SimConfig,
) -> Result<Traced<Reduction>> {
    require("input ruling edge set", verify_ruling_edge_set(g, r, 2, beta_bound))?;
    let iterations = beta_bound.saturating_sub(2);
    reduce_run(g, r, iterations, beta_bound.min(2), config)
}

type PipelineOut = (Vec<usize>, (Option<usize>, Option<ReduceOutput>));

fn pipeline(
    g: &Graph,
    reduce: bool,
    config: &SimConfig,
) -> Result<Traced<EdgePipeline>> {
    let matching = matching_protocol(2, g.idspace());
    let first = Then::new(Propose, Carry::new(matching), |_: &NodeContext, f: Vec<usize>| (f.clone(), f));
    let iterations = usize::from(reduce);
    let second = Carry::new(Carry::new(Reduce { iterations }));
    let proto = Then::new(first, second, |_: &NodeContext, (f, m): (Vec<usize>, Option<usize>)| {
        (f, (m, m.into_iter().collect::<Vec<_>>()))
    });
    let program = Scheduled::new(proto, |_: &NodeContext| ());
    let report = run(g, &program, config)?;
    report.trace(|outs| {
        let outs: BTreeMap<NodeId, PipelineOut> =
            outs.into_iter().map(|(v, (f, (m, red)))| (v, (f, (m, reduce.then_some(red))))).collect();
        assemble_pipeline(g, &outs)
    })
}

fn assemble_pipeline(g: &Graph, outs: &BTreeMap<NodeId, PipelineOut>) -> Result<EdgePipeline> {
    let nbrs = |v: NodeId, ports: &mut dyn Iterator<Item = usize>| -> Vec<NodeId> {
        let i = g.index_of(v).expect("known node");
        ports.map(|p| g.id(g.neighbors(i)[p])).collect()
    };
    let kernel: BTreeMap<_, _> =
        outs.iter().map(|(&v, (f, _))| (v, nbrs(v, &mut f.iter().copied()))).collect();
    let matched: BTreeMap<_, _> =
        outs.iter().map(|(&v, (_, (m, _)))| (v, nbrs(v, &mut m.iter().copied()))).collect();
    let kernel = EdgeKernel { edges: edges_from_endpoints(&kernel)?, d: 2, r: 2 };
    let three = RulingEdgeSet { edges: edges_from_endpoints(&matched)?, alpha: 2, beta: 3 };
    let two = if outs.values().any(|(_, (_, red))| red.is_some()) {
        let red: BTreeMap<_, _> = outs
            .iter()
            .map(|(&v, (_, (_, red)))| (v, red.clone().unwrap_or_default()))
            .collect();
        Some(assemble_reduction(g, &three.edges, 2, &red)?)
    } else {
        None
    };
    Ok(EdgePipeline { kernel, three, two })
}

/// Kernel, then a maximal matching of `G[F]`: a (2, 3)-ruling edge set in
/// `O(log* idspace)` rounds.
pub fn three_ruling_edge_set(g: &Graph, config: &SimConfig) -> Result<Traced<EdgePipeline>> {
    pipeline(g, false, config)
}

/// The full pipeline: kernel, matching, and one reduction iteration, giving a
/// (2, 2)-ruling edge set in `O(log* idspace)` rounds.
pub fn two_ruling_edge_set(g: &Graph, config: &SimConfig) -> Result<Traced<EdgePipeline>> {
    pipeline(g, true, config)
}

/// Picks the smaller endpoint of every ruling edge plus every isolated node:
/// an `(alpha - 1, beta + 1)`-ruling set.
pub fn edge_ruling_to_vertex_ruling(g: &Graph, r: &RulingEdgeSet) -> Result<RulingSet> {
    if r.alpha < 2 {
        return Err(Error::InvalidParameter(format!("alpha {} < 2", r.alpha)));
    }
    let mut nodes: BTreeSet<NodeId> = r.edges.iter().map(|e| e.lo()).collect();
    nodes.extend((0..g.n()).filter(|&i| g.is_isolated(i)).map(|i| g.id(i)));
    Ok(RulingSet { nodes, alpha: r.alpha - 1, beta: r.beta + 1 })
}
