use crate::sim::{Inbox, Message, NodeContext, Outbox, Protocol};

/// Greedy matching over the color classes of a proper line-graph coloring.
///
/// In round `t` both endpoints of every class-`t` edge signal on it if they
/// are still unmatched; an edge whose endpoints both signalled joins the
/// matching. A proper coloring means no node sees two class-`t` edges.
///
/// Input: `(port, color)` per candidate edge. Output: the matched port.
#[derive(Debug, Clone, Copy)]
pub struct MatchClasses {
    pub classes: u64,
}

#[derive(Debug, Clone)]
pub struct MatchState {
    edges: Vec<(usize, u64)>,
    matched: Option<usize>,
}

impl MatchState {
    fn class_port(&self, t: u64) -> Option<usize> {
        if self.matched.is_some() {
            return None;
        }
        self.edges.iter().find(|&&(_, c)| c == t).map(|&(p, _)| p)
    }
}

impl Protocol for MatchClasses {
    type Input = Vec<(usize, u64)>;
    type State = MatchState;
    type Output = Option<usize>;

    fn rounds(&self) -> usize {
        self.classes as usize
    }

    fn start(&self, _ctx: &NodeContext, edges: Self::Input) -> MatchState {
        MatchState { edges, matched: None }
    }

    fn send(&self, ctx: &NodeContext, state: &MatchState, round: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        if let Some(p) = state.class_port(round as u64) {
            out.send(p, Message::empty());
        }
        out
    }

    fn receive(&self, _ctx: &NodeContext, state: &mut MatchState, round: usize, inbox: &Inbox) {
        if let Some(p) = state.class_port(round as u64) {
            if inbox.get(p).is_some() {
                state.matched = Some(p);
            }
        }
    }

    fn finish(&self, _ctx: &NodeContext, state: MatchState) -> Option<usize> {
        state.matched
    }
}
