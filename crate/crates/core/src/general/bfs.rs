use crate::sim::{Inbox, Message, NodeContext, Outbox, Protocol};

/// Hop-limited multi-source BFS: sources start at 0, and in round `j` every
/// node at distance exactly `j` tells its neighbors. After `radius` rounds a
/// node holds its exact distance if it is at most `radius`, else
/// `radius + 1`.
///
/// Input: whether the node is a source.
#[derive(Debug, Clone, Copy)]
pub struct BoundedBfs {
    pub radius: usize,
}

/// One relay round over `ports`: nodes at distance `round` send, nodes not
/// yet reached adopt `round + 1`.
pub(crate) fn relay_send(ctx: &NodeContext, dist: usize, round: usize, ports: &[usize]) -> Outbox {
    let mut out = Outbox::silent(ctx);
    if dist == round {
        for &p in ports {
            out.send(p, Message::empty());
        }
    }
    out
}

pub(crate) fn relay_receive(dist: &mut usize, round: usize, ports: &[usize], inbox: &Inbox) {
    if *dist > round + 1 && ports.iter().any(|&p| inbox.get(p).is_some()) {
        *dist = round + 1;
    }
}

#[derive(Debug, Clone)]
pub struct BfsState {
    dist: usize,
    ports: Vec<usize>,
}

impl Protocol for BoundedBfs {
    type Input = bool;
    type State = BfsState;
    type Output = usize;

    fn rounds(&self) -> usize {
        self.radius
    }

    fn start(&self, ctx: &NodeContext, source: bool) -> BfsState {
        let dist = if source { 0 } else { self.radius + 1 };
        BfsState { dist, ports: (0..ctx.degree()).collect() }
    }

    fn send(&self, ctx: &NodeContext, s: &BfsState, round: usize) -> Outbox {
        relay_send(ctx, s.dist, round, &s.ports)
    }

    fn receive(&self, _ctx: &NodeContext, s: &mut BfsState, round: usize, inbox: &Inbox) {
        relay_receive(&mut s.dist, round, &s.ports, inbox);
    }

    fn finish(&self, _ctx: &NodeContext, s: BfsState) -> usize {
        s.dist
    }
}
