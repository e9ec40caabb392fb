//! B-ary digit splitting: ruling sets from colorings or IDs.

mod bary;
mod bfs;

pub use bary::{Bary, BaryInput, BaryNode, BaryState, DigitSchedule};
pub use bfs::{BfsState, BoundedBfs};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{require, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sets::{Coloring, RulingSet};
use crate::sim::{run, Carry, NodeContext, Scheduled, SimConfig, Then, Traced};
use crate::symmetry::{LinialInput, NodeLinial};
use crate::verify::verify_coloring;

/// `min(dist(v, sources), radius + 1)` for every node, in `radius` rounds.
pub fn bounded_bfs_flags(
    g: &Graph,
    sources: &BTreeSet<NodeId>,
    radius: usize,
    config: &SimConfig,
) -> Result<Traced<BTreeMap<NodeId, usize>>> {
    let program = Scheduled::new(BoundedBfs { radius }, |ctx: &NodeContext| sources.contains(&ctx.id));
    let report = run(g, &program, config)?;
    report.trace(Ok::<_, Error>)
}

/// Outcome of a B-ary run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaryRun {
    pub ruling: RulingSet,
    pub digits: DigitSchedule,
    /// Size of the input palette.
    pub colors: u64,
    pub participants: BTreeSet<NodeId>,
    /// `(digit, value)` step at which each removed node left.
    pub removed: BTreeMap<NodeId, (usize, u64)>,
}

impl BaryRun {
    /// `R` before any digit (index 0) and after each digit position.
    pub fn stages(&self) -> Vec<BTreeSet<NodeId>> {
        (0..=self.digits.num_digits)
            .map(|done| {
                self.participants
                    .iter()
                    .filter(|v| self.removed.get(v).is_none_or(|&(i, _)| i >= done))
                    .copied()
                    .collect()
            })
            .collect()
    }
}

fn check_params(alpha: usize, base: u64) -> Result<()> {
    if alpha < 2 {
        return Err(Error::InvalidParameter(format!("alpha {alpha} < 2")));
    }
    if base < 2 {
        return Err(Error::InvalidParameter(format!("base {base} < 2")));
    }
    Ok(())
}

pub(crate) fn assemble(
    alpha: usize,
    digits: DigitSchedule,
    colors: u64,
    outs: BTreeMap<NodeId, Option<BaryNode>>,
) -> Result<BaryRun> {
    let mut nodes = BTreeSet::new();
    let mut participants = BTreeSet::new();
    let mut removed = BTreeMap::new();
    for (v, out) in outs {
        let Some(out) = out else { continue };
        participants.insert(v);
        match out.left_at {
            Some(step) => {
                removed.insert(v, step);
            }
            None => {
                nodes.insert(v);
            }
        }
    }
    let beta = (alpha - 1) * digits.num_digits;
    Ok(BaryRun { ruling: RulingSet { nodes, alpha, beta }, digits, colors, participants, removed })
}

fn bary_unchecked(
    g: &Graph,
    colors: &BTreeMap<NodeId, u64>,
    num_colors: u64,
    alpha: usize,
    base: u64,
    config: &SimConfig,
) -> Result<Traced<BaryRun>> {
    let digits = DigitSchedule::new(base, num_colors);
    let input = |ctx: &NodeContext| {
        Some(BaryInput { color: colors[&ctx.id], ports: (0..ctx.degree()).collect() })
    };
    let report = run(g, &Scheduled::new(Bary { alpha, digits }, input), config)?;
    report.trace(|outs| assemble(alpha, digits, num_colors, outs))
}

/// `(alpha, (alpha - 1) * ceil(log_base C))`-ruling set from a `C`-coloring
/// of `G^(alpha - 1)`.
pub fn bary_ruling_set(
    g: &Graph,
    coloring: &Coloring,
    alpha: usize,
    base: u64,
    config: &SimConfig,
) -> Result<Traced<BaryRun>> {
    check_params(alpha, base)?;
    let verdict = verify_coloring(g, &coloring.colors, coloring.num_colors, alpha - 1);
    require("coloring of the power graph", verdict)?;
    bary_unchecked(g, &coloring.colors, coloring.num_colors, alpha, base, config)
}

/// B-ary splitting on the IDs, which color every power graph with `idspace`
/// colors: an `(alpha, (alpha - 1) * ceil(log_base idspace))`-ruling set.
pub fn ruling_set_from_ids(
    g: &Graph,
    alpha: usize,
    base: u64,
    config: &SimConfig,
) -> Result<Traced<BaryRun>> {
    check_params(alpha, base)?;
    let colors = g.ids().iter().map(|&v| (v, v.0)).collect();
    bary_unchecked(g, &colors, g.idspace(), alpha, base, config)
}

/// Smallest base `B >= 2` with `ceil(log_B colors) <= beta`.
pub fn base_for_beta(colors: u64, beta: usize) -> Result<u64> {
    if colors <= 1 {
        return Ok(2);
    }
    if beta == 0 {
        return Err(Error::InfeasibleBeta { beta, colors });
    }
    // The floating-point root lands within one of the answer.
    let root = (colors as f64).powf(1.0 / beta as f64).floor() as u64;
    let mut base = root.saturating_sub(1).max(2);
    while DigitSchedule::new(base, colors).num_digits > beta {
        base += 1;
    }
    Ok(base)
}

/// Linial coloring followed by B-ary splitting with `alpha = 2` and the
/// smallest base meeting `beta`: a `(2, beta)`-ruling set.
pub fn two_beta_ruling_set(g: &Graph, beta: usize, config: &SimConfig) -> Result<Traced<BaryRun>> {
    if beta < 2 {
        return Err(Error::InvalidParameter(format!("beta {beta} < 2")));
    }
    let linial = NodeLinial::new(g.max_degree(), g.idspace() as u128);
    let colors = u64::try_from(linial.schedule.palette()).expect("palette fits in 64 bits");
    let base = base_for_beta(colors, beta)?;
    let digits = DigitSchedule::new(base, colors);
    let bary = Bary { alpha: 2, digits };
    let proto = Then::new(Carry::new(linial), bary, |_: &NodeContext, (ports, c): (Vec<usize>, Option<u64>)| {
        c.map(|color| BaryInput { color, ports })
    });
    let input = |ctx: &NodeContext| {
        let ports: Vec<usize> = (0..ctx.degree()).collect();
        (ports.clone(), Some(LinialInput { color: ctx.id.0 as u128, ports }))
    };
    let report = run(g, &Scheduled::new(proto, input), config)?;
    report.trace(|outs| assemble(2, digits, colors, outs))
}
