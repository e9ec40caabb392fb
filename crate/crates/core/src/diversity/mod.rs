//! Clique proposals, vertex kernels and ruling sets for graphs with a clique
//! edge cover of small diversity, including line graphs of hypergraphs.

mod proposal;

pub use proposal::{LedClique, NodeProposal, Proposal, ProposalState, ROUNDS_PER_PHASE};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{require, Result};
use crate::general::{assemble, base_for_beta, Bary, BaryInput, BaryRun, DigitSchedule};
use crate::graph::{hyper_line_graph_with_cover, induced_subgraph, CliqueEdgeCover, Graph, Hypergraph, NodeId};
use crate::sets::{RulingSet, VertexKernel};
use crate::sim::{run, Carry, NodeContext, Scheduled, SimConfig, Then, Traced};
use crate::symmetry::{LinialInput, NodeLinial};
use crate::verify::{verify_cover, verify_ruling_set, verify_vertex_kernel};

/// Domination bound of the ruling set computed on the kernel.
pub const INNER_BETA: usize = 4;

/// Sets after one proposal phase.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhaseSnapshot {
    /// Nodes proposed in this phase (`S`).
    pub proposed: BTreeSet<NodeId>,
    /// Active nodes after the phase (`P`).
    pub active: BTreeSet<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProposalTrace {
    pub kernel: VertexKernel,
    pub phases: Vec<PhaseSnapshot>,
    /// Nodes each clique proposed, in order.
    pub history: BTreeMap<usize, Vec<NodeId>>,
}

fn led_cliques(q: &CliqueEdgeCover, v: NodeId) -> Vec<LedClique> {
    q.memberships(v)
        .iter()
        .filter(|&&c| q.leader(c) == v)
        .map(|&c| LedClique { index: c, members: q.cliques()[c].clone() })
        .collect()
}

fn proposal_trace(d: usize, outs: &BTreeMap<NodeId, NodeProposal>) -> ProposalTrace {
    let mut phases = vec![PhaseSnapshot::default(); d];
    let mut history = BTreeMap::new();
    for (&v, out) in outs {
        for (snap, &(proposed, active)) in phases.iter_mut().zip(&out.phases) {
            if proposed {
                snap.proposed.insert(v);
            }
            if active {
                snap.active.insert(v);
            }
        }
        history.extend(out.history.iter().cloned());
    }
    let nodes = outs.iter().filter(|(_, o)| o.active_ports.is_some()).map(|(&v, _)| v).collect();
    ProposalTrace { kernel: VertexKernel { nodes, d: d * d, r: d }, phases, history }
}

/// Runs one proposal phase per unit of diversity. The surviving active set
/// is a `(D^2, D)`-vertex-kernel meeting every cover clique in at most `D`
/// nodes.
pub fn diversity_proposal(g: &Graph, q: &CliqueEdgeCover, config: &SimConfig) -> Result<Traced<ProposalTrace>> {
    require("clique edge cover", verify_cover(g, q))?;
    let d = q.diversity();
    let program = Scheduled::new(Proposal { phases: d }, |ctx: &NodeContext| led_cliques(q, ctx.id));
    let report = run(g, &program, config)?;
    report.trace(|outs| Ok(proposal_trace(d, &outs)))
}

/// Lifts a ruling set of `G[A]` to `g`: a `(2, r2)`-ruling set of the
/// kernel's induced subgraph is `(2, kernel.r + r2)`-ruling on `g`.
pub fn ruling_from_vertex_kernel(
    g: &Graph,
    kernel: &VertexKernel,
    inner: impl FnOnce(&Graph) -> Result<RulingSet>,
) -> Result<RulingSet> {
    require("vertex kernel", verify_vertex_kernel(g, &kernel.nodes, kernel.d, kernel.r))?;
    let sub = induced_subgraph(g, &kernel.nodes)?;
    let r = inner(&sub)?;
    require("inner ruling set on G[A]", verify_ruling_set(&sub, &r.nodes, 2, r.beta))?;
    Ok(RulingSet { nodes: r.nodes, alpha: 2, beta: kernel.r + r.beta })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiversityRun {
    pub proposal: ProposalTrace,
    /// B-ary run on the kernel.
    pub inner: BaryRun,
    /// `(2, D + 4)`-ruling set of the input graph.
    pub ruling: RulingSet,
}

/// Proposals, then a Linial coloring and B-ary splitting of `G[P]` with
/// `beta = 4`: a `(2, D + 4)`-ruling set.
pub fn diversity_ruling_set(g: &Graph, q: &CliqueEdgeCover, config: &SimConfig) -> Result<Traced<DiversityRun>> {
    require("clique edge cover", verify_cover(g, q))?;
    let d = q.diversity();
    let kernel_degree = (d * d.saturating_sub(1)).min(g.max_degree());
    let linial = NodeLinial::new(kernel_degree, g.idspace() as u128);
    let colors = u64::try_from(linial.schedule.palette()).expect("palette fits in 64 bits");
    let digits = DigitSchedule::new(base_for_beta(colors, INNER_BETA)?, colors);

    let color = Then::new(Proposal { phases: d }, Carry::new(linial), |ctx: &NodeContext, np: NodeProposal| {
        let input = np.active_ports.clone().map(|ports| LinialInput { color: ctx.id.0 as u128, ports });
        (np, input)
    });
    let proto = Then::new(
        color,
        Carry::new(Bary { alpha: 2, digits }),
        |_: &NodeContext, (np, c): (NodeProposal, Option<u64>)| {
            let input = c.zip(np.active_ports.clone()).map(|(color, ports)| BaryInput { color, ports });
            (np, input)
        },
    );
    let program = Scheduled::new(proto, |ctx: &NodeContext| led_cliques(q, ctx.id));
    let report = run(g, &program, config)?;
    report.trace(|outs| {
        let (proposals, bary): (BTreeMap<_, _>, BTreeMap<_, _>) =
            outs.into_iter().map(|(v, (np, b))| ((v, np), (v, b))).unzip();
        let proposal = proposal_trace(d, &proposals);
        let inner = assemble(2, digits, colors, bary)?;
        let ruling = RulingSet { nodes: inner.ruling.nodes.clone(), alpha: 2, beta: d + INNER_BETA };
        Ok(DiversityRun { proposal, inner, ruling })
    })
}

/// Hyperedge set, by index, claimed to be `(alpha, beta)`-ruling in the line
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperRulingEdgeSet {
    pub edges: BTreeSet<usize>,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperRun {
    pub ruling: HyperRulingEdgeSet,
    pub run: DiversityRun,
}

/// `(2, rank + 4)`-ruling hyperedge set: the diversity algorithm on the line
/// graph, covered by one clique per vertex.
pub fn hypergraph_edge_ruling_set(h: &Hypergraph, config: &SimConfig) -> Result<Traced<HyperRun>> {
    let (line, cover) = hyper_line_graph_with_cover(h);
    let traced = diversity_ruling_set(&line, &cover, config)?;
    Ok(traced.map(|run| {
        let edges = run.ruling.nodes.iter().map(|v| v.0 as usize).collect();
        HyperRun { ruling: HyperRulingEdgeSet { edges, alpha: 2, beta: h.rank() + INNER_BETA }, run }
    }))
}

#[cfg(test)]
mod tests;
