use serde::{Deserialize, Serialize};

use super::Message;
use crate::graph::NodeId;

/// Facts every node knows before the first round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Globals {
    pub n: usize,
    pub idspace: u64,
    pub max_degree: usize,
    /// `max(1, ceil(log2 idspace))`
    pub id_bits: u32,
}

/// One communication port of a node: a neighbor in a graph, an incident
/// hyperedge in a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    /// Hyperedge index for hypergraph runs; the neighbor's node index otherwise.
    pub link: usize,
    /// Nodes reached through this port, ascending. Exactly one on a graph.
    pub peers: Vec<NodeId>,
}

/// What a node may know about the network at start-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeContext {
    pub id: NodeId,
    /// Ports ordered by neighbor ID (graph) or hyperedge index (hypergraph).
    pub ports: Vec<Port>,
    pub globals: Globals,
}

impl NodeContext {
    pub fn degree(&self) -> usize {
        self.ports.len()
    }

    /// The (single) peer behind `port`.
    pub fn neighbor(&self, port: usize) -> NodeId {
        self.ports[port].peers[0]
    }

    /// Port leading to neighbor `id`, on a graph.
    pub fn port_of(&self, id: NodeId) -> Option<usize> {
        self.ports.binary_search_by_key(&id, |p| p.peers[0]).ok()
    }
}

/// Messages a node sends in one round, at most one per port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outbox {
    slots: Vec<Option<Message>>,
}

impl Outbox {
    pub fn silent(ctx: &NodeContext) -> Self {
        Outbox { slots: vec![None; ctx.degree()] }
    }

    pub fn send(&mut self, port: usize, msg: Message) {
        self.slots[port] = Some(msg);
    }

    pub fn broadcast(&mut self, msg: Message) {
        for slot in &mut self.slots {
            *slot = Some(msg.clone());
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub(crate) fn into_slots(self) -> Vec<Option<Message>> {
        self.slots
    }
}

/// Messages received in one round, grouped by port and ordered by sender ID.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inbox {
    slots: Vec<Vec<(NodeId, Message)>>,
}

impl Inbox {
    pub(crate) fn new(degree: usize) -> Self {
        Inbox { slots: vec![Vec::new(); degree] }
    }

    pub(crate) fn push(&mut self, port: usize, from: NodeId, msg: Message) {
        self.slots[port].push((from, msg));
    }

    /// The message that arrived on `port`, if any (graph runs).
    pub fn get(&self, port: usize) -> Option<&Message> {
        self.slots[port].first().map(|(_, m)| m)
    }

    pub fn port(&self, port: usize) -> &[(NodeId, Message)] {
        &self.slots[port]
    }

    /// `(port, sender, message)` triples.
    pub fn iter(&self) -> impl Iterator<Item = (usize, NodeId, &Message)> {
        self.slots
            .iter()
            .enumerate()
            .flat_map(|(p, s)| s.iter().map(move |(from, m)| (p, *from, m)))
    }

    pub fn is_empty(&self) -> bool {
        self.slots.iter().all(Vec::is_empty)
    }
}

/// A per-node state machine run by the simulator.
///
/// Each round, every running node first produces its outbox from its state,
/// then all messages are delivered, then every running node consumes its
/// inbox. `send` must not mutate state and `receive` sees nothing but the
/// node's own state and inbox, so a node learns about the network only
/// through its context and its messages. A node that reports halted after
/// `init` or `receive` is frozen.
///
/// Local computation is unbounded in the model; implementations are expected
/// to stay polynomial.
pub trait NodeProgram: Sync {
    type State: Send + Sync;
    type Output: Send;

    fn init(&self, ctx: &NodeContext) -> Self::State;
    fn is_halted(&self, state: &Self::State) -> bool;
    fn send(&self, ctx: &NodeContext, state: &Self::State, round: usize) -> Outbox;
    fn receive(&self, ctx: &NodeContext, state: &mut Self::State, round: usize, inbox: &Inbox);
    fn output(&self, ctx: &NodeContext, state: Self::State) -> Self::Output;
}
