use crate::sim::{Inbox, Message, NodeContext, Outbox, Protocol};

/// Two-round proposal: every node proposes the edge to its smallest-ID
/// neighbor, then accepts the proposal of its smallest-ID proposer and tells
/// that proposer. The accepted edges form a (2, 2)-edge-kernel.
///
/// Output: ports of the node's kernel edges, ascending.
#[derive(Debug, Clone, Copy, Default)]
pub struct Propose;

#[derive(Debug, Clone, Default)]
pub struct ProposeState {
    accepted: Option<usize>,
    notified: Vec<usize>,
}

impl Protocol for Propose {
    type Input = ();
    type State = ProposeState;
    type Output = Vec<usize>;

    fn rounds(&self) -> usize {
        2
    }

    fn start(&self, _ctx: &NodeContext, _input: ()) -> ProposeState {
        ProposeState::default()
    }

    fn send(&self, ctx: &NodeContext, state: &ProposeState, round: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        match round {
            0 if ctx.degree() > 0 => out.send(0, Message::empty()),
            1 => {
                if let Some(p) = state.accepted {
                    out.send(p, Message::empty());
                }
            }
            _ => {}
        }
        out
    }

    fn receive(&self, _ctx: &NodeContext, state: &mut ProposeState, round: usize, inbox: &Inbox) {
        let senders = inbox.iter().map(|(p, _, _)| p);
        if round == 0 {
            state.accepted = senders.min();
        } else {
            state.notified = senders.collect();
        }
    }

    fn finish(&self, _ctx: &NodeContext, state: ProposeState) -> Vec<usize> {
        let mut ports = state.notified;
        ports.extend(state.accepted);
        ports.sort_unstable();
        ports.dedup();
        ports
    }
}
