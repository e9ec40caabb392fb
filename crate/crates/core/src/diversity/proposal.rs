use std::collections::BTreeSet;

use crate::graph::NodeId;
use crate::sim::{Inbox, Message, NodeContext, Outbox, Protocol};

pub const ROUNDS_PER_PHASE: usize = 3;

/// A clique coordinated by this node (its smallest-ID member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedClique {
    /// Index of the clique in the cover.
    pub index: usize,
    pub members: Vec<NodeId>,
}

/// Clique proposals, one phase per unit of diversity. In each phase:
///
/// * round a: active nodes announce themselves to all neighbors;
/// * round b: every leader picks, for each clique it leads, the smallest-ID
///   active member that clique has not proposed before, and tells it;
/// * round c: proposed nodes announce themselves; an active node that was not
///   proposed and hears a proposed neighbor becomes inactive.
///
/// A final round tells every active node which neighbors stayed active.
///
/// Input: the cliques the node leads.
#[derive(Debug, Clone, Copy)]
pub struct Proposal {
    pub phases: usize,
}

/// Per-node view of a proposal run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeProposal {
    /// `(proposed, active)` at the end of each phase.
    pub phases: Vec<(bool, bool)>,
    /// Proposal history of each led clique, in proposal order.
    pub history: Vec<(usize, Vec<NodeId>)>,
    /// Ports to active neighbors, for active nodes.
    pub active_ports: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct ProposalState {
    led: Vec<LedClique>,
    active: bool,
    active_nbrs: BTreeSet<NodeId>,
    targets: BTreeSet<NodeId>,
    proposed: bool,
    out: NodeProposal,
}

impl Protocol for Proposal {
    type Input = Vec<LedClique>;
    type State = ProposalState;
    type Output = NodeProposal;

    fn rounds(&self) -> usize {
        ROUNDS_PER_PHASE * self.phases + 1
    }

    fn start(&self, _ctx: &NodeContext, led: Vec<LedClique>) -> ProposalState {
        let history = led.iter().map(|c| (c.index, Vec::new())).collect();
        ProposalState {
            led,
            active: true,
            active_nbrs: BTreeSet::new(),
            targets: BTreeSet::new(),
            proposed: false,
            out: NodeProposal { history, ..NodeProposal::default() },
        }
    }

    fn send(&self, ctx: &NodeContext, s: &ProposalState, round: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        let announce = match round % ROUNDS_PER_PHASE {
            _ if round == self.rounds() - 1 => s.active,
            0 => s.active,
            1 => {
                for &v in &s.targets {
                    if let Some(p) = ctx.port_of(v) {
                        out.send(p, Message::empty());
                    }
                }
                false
            }
            _ => s.proposed,
        };
        if announce {
            out.broadcast(Message::empty());
        }
        out
    }

    fn receive(&self, ctx: &NodeContext, s: &mut ProposalState, round: usize, inbox: &Inbox) {
        if round == self.rounds() - 1 {
            s.out.active_ports = s.active.then(|| inbox.iter().map(|(p, _, _)| p).collect());
            return;
        }
        match round % ROUNDS_PER_PHASE {
            0 => {
                s.active_nbrs = inbox.iter().map(|(_, v, _)| v).collect();
                s.targets.clear();
                for (c, (_, history)) in s.led.iter().zip(&mut s.out.history) {
                    let eligible = c.members.iter().copied().find(|&v| {
                        let active = if v == ctx.id { s.active } else { s.active_nbrs.contains(&v) };
                        active && !history.contains(&v)
                    });
                    if let Some(v) = eligible {
                        history.push(v);
                        s.targets.insert(v);
                    }
                }
            }
            1 => {
                s.proposed = s.targets.contains(&ctx.id) || !inbox.is_empty();
            }
            _ => {
                if s.active && !s.proposed && !inbox.is_empty() {
                    s.active = false;
                }
                s.out.phases.push((s.proposed, s.active));
            }
        }
    }

    fn finish(&self, _ctx: &NodeContext, s: ProposalState) -> NodeProposal {
        s.out
    }
}
