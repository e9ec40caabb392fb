//! Coloring and bounded-degree maximal matching.

mod linial;
mod matching;

pub use linial::{EdgeLinial, LinialInput, LinialSchedule, LinialStep, NodeLinial, LINIAL_C};
pub use matching::{MatchClasses, MatchState};

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::sets::{edges_from_endpoints, Coloring, Matching};
use crate::sim::{run, NodeContext, Protocol, Scheduled, SimConfig, Then, Traced};

/// Line-graph degree bound for a graph of max degree `d`.
pub fn line_degree(d: usize) -> usize {
    2 * d.saturating_sub(1)
}

/// Proper coloring of `g` with at most `LINIAL_C * max_degree^2` colors
/// (or `idspace` colors when that is smaller), starting from the IDs.
pub fn linial_coloring(g: &Graph, config: &SimConfig) -> Result<Traced<Coloring>> {
    let proto = NodeLinial::new(g.max_degree(), g.idspace() as u128);
    let num_colors = proto.schedule.palette() as u64;
    let input = |ctx: &NodeContext| {
        Some(LinialInput { color: ctx.id.0 as u128, ports: (0..ctx.degree()).collect() })
    };
    let report = run(g, &Scheduled::new(proto, input), config)?;
    report.trace(|outs| {
        let colors = outs.into_iter().map(|(v, c)| (v, c.expect("every node participates"))).collect();
        Ok::<_, crate::Error>(Coloring { colors, num_colors, power: 1 })
    })
}

/// Maximal matching of the subgraph formed by the selected incident edges
/// (input: selected ports), whose max degree is at most `degree`.
/// Output: the matched port, if any.
pub fn matching_protocol(
    degree: usize,
    idspace: u64,
) -> impl Protocol<Input = Vec<usize>, Output = Option<usize>> {
    let color = EdgeLinial::new(line_degree(degree), idspace);
    let classes = if degree == 0 { 0 } else { color.schedule.palette() as u64 };
    let classes = MatchClasses { classes };
    Then::new(color, classes, |_: &NodeContext, colored| colored)
}

/// Maximal matching of `g` by coloring the line graph and sweeping its
/// color classes. Rounds grow with `max_degree^2`; messages carry
/// `max_degree - 1` edge colors and so fit the default cap only while the
/// max degree is at most 5.
pub fn maximal_matching_bounded_degree(g: &Graph, config: &SimConfig) -> Result<Traced<Matching>> {
    let proto = matching_protocol(g.max_degree(), g.idspace());
    let program = Scheduled::new(proto, |ctx: &NodeContext| (0..ctx.degree()).collect());
    let report = run(g, &program, config)?;
    report.trace(|outs| {
        let reports: BTreeMap<NodeId, Vec<NodeId>> = outs
            .into_iter()
            .map(|(v, p)| (v, p.map(|p| g.id(g.neighbors(g.index_of(v).unwrap())[p])).into_iter().collect()))
            .collect();
        Ok(Matching { edges: edges_from_endpoints(&reports)? })
    })
}
