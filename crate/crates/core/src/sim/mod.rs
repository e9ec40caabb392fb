//! Round-synchronous CONGEST executor.
//!
//! All nodes advance in lockstep. In round `t` every running node builds its
//! outbox, every message is checked against the size cap and delivered, and
//! then every running node processes its inbox. Inboxes are ordered by
//! sender ID, so a run is a deterministic function of graph, program and
//! configuration, whether or not node steps are evaluated in parallel.

mod message;
mod program;
pub mod protocol;

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use message::{BitReader, Message, MessageBuilder};
pub use program::{Globals, Inbox, NodeContext, NodeProgram, Outbox, Port};
pub use protocol::{Carry, Protocol, Scheduled, Then};

use crate::graph::{bits_for, Graph, Hypergraph, NodeId};

pub const DEFAULT_CAP_MULTIPLIER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageCap {
    /// `cap_multiplier * id_bits` bits.
    Scaled,
    Bits(usize),
    Unlimited,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub cap: MessageCap,
    pub cap_multiplier: usize,
    pub max_rounds: usize,
    pub record_transcript: bool,
    /// Evaluate node steps on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            cap: MessageCap::Scaled,
            cap_multiplier: DEFAULT_CAP_MULTIPLIER,
            max_rounds: 1_000_000,
            record_transcript: false,
            parallel: false,
        }
    }
}

impl SimConfig {
    pub fn unlimited() -> Self {
        SimConfig { cap: MessageCap::Unlimited, ..Self::default() }
    }

    pub fn with_transcript(mut self) -> Self {
        self.record_transcript = true;
        self
    }

    /// Effective cap in bits for a network whose IDs need `id_bits` bits.
    pub fn cap_bits(&self, id_bits: u32) -> Option<usize> {
        match self.cap {
            MessageCap::Scaled => Some(self.cap_multiplier * id_bits as usize),
            MessageCap::Bits(b) => Some(b),
            MessageCap::Unlimited => None,
        }
    }

    pub fn is_cap_exempt(&self) -> bool {
        self.cap == MessageCap::Unlimited
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("round {round}: message {from} -> {to} has {bits} bits, cap is {cap}")]
    MessageTooLarge { round: usize, from: NodeId, to: NodeId, bits: usize, cap: usize },
    #[error("round {round}: message from {from} on hyperedge {hyperedge} has {bits} bits, cap is {cap}")]
    HyperMessageTooLarge { round: usize, from: NodeId, hyperedge: usize, bits: usize, cap: usize },
    #[error("non-termination: nodes still running after {max_rounds} rounds")]
    NonTermination { max_rounds: usize },
    #[error("node {node} produced an outbox with {got} slots for {expected} ports")]
    OutboxShape { node: NodeId, expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageRecord {
    pub from: NodeId,
    pub to: NodeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    pub bits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTranscript {
    pub round: usize,
    pub msgs: Vec<MessageRecord>,
}

/// Accounting for one execution, without the per-node outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RunStats {
    pub rounds_used: usize,
    pub max_message_bits: usize,
    pub total_messages: usize,
    pub total_bits: usize,
}

impl RunStats {
    /// Stats of two runs executed back to back.
    pub fn then(self, next: RunStats) -> RunStats {
        RunStats {
            rounds_used: self.rounds_used + next.rounds_used,
            max_message_bits: self.max_message_bits.max(next.max_message_bits),
            total_messages: self.total_messages + next.total_messages,
            total_bits: self.total_bits + next.total_bits,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport<O> {
    pub stats: RunStats,
    pub outputs: BTreeMap<NodeId, O>,
    pub halted_all: bool,
    /// Cap that was enforced; `None` when unlimited.
    pub cap_bits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<Vec<RoundTranscript>>,
}

impl<O> RunReport<O> {
    pub fn rounds_used(&self) -> usize {
        self.stats.rounds_used
    }

    pub fn max_message_bits(&self) -> usize {
        self.stats.max_message_bits
    }

    /// Replaces the per-node outputs by a value assembled from them.
    pub fn trace<T, E>(
        self,
        assemble: impl FnOnce(BTreeMap<NodeId, O>) -> Result<T, E>,
    ) -> Result<Traced<T>, E> {
        Ok(Traced {
            value: assemble(self.outputs)?,
            stats: self.stats,
            cap_bits: self.cap_bits,
            transcript: self.transcript,
        })
    }
}

/// An algorithm result together with the accounting of the run that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Traced<T> {
    pub value: T,
    pub stats: RunStats,
    pub cap_bits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<Vec<RoundTranscript>>,
}

impl<T> Traced<T> {
    pub fn rounds_used(&self) -> usize {
        self.stats.rounds_used
    }

    pub fn max_message_bits(&self) -> usize {
        self.stats.max_message_bits
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Traced<U> {
        Traced { value: f(self.value), stats: self.stats, cap_bits: self.cap_bits, transcript: self.transcript }
    }
}

/// Writes a transcript as JSON lines, one round per line.
pub fn write_transcript<W: Write>(mut out: W, transcript: &[RoundTranscript]) -> io::Result<()> {
    for round in transcript {
        serde_json::to_writer(&mut out, round)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

struct Topology {
    ctxs: Vec<NodeContext>,
    /// `links[node][port]` = receivers as `(node index, receiver port)`.
    links: Vec<Vec<Vec<(usize, usize)>>>,
    hyper: bool,
    id_bits: u32,
}

impl Topology {
    fn of_graph(g: &Graph) -> Self {
        let globals = Globals {
            n: g.n(),
            idspace: g.idspace(),
            max_degree: g.max_degree(),
            id_bits: g.id_bits(),
        };
        let ctxs = (0..g.n())
            .map(|i| NodeContext {
                id: g.id(i),
                ports: g
                    .neighbors(i)
                    .iter()
                    .map(|&j| Port { link: j, peers: vec![g.id(j)] })
                    .collect(),
                globals,
            })
            .collect();
        let links = (0..g.n())
            .map(|i| {
                g.neighbors(i)
                    .iter()
                    .map(|&j| {
                        let back = g.neighbors(j).binary_search(&i).expect("symmetric adjacency");
                        vec![(j, back)]
                    })
                    .collect()
            })
            .collect();
        Topology { ctxs, links, hyper: false, id_bits: g.id_bits() }
    }

    fn of_hypergraph(h: &Hypergraph) -> Self {
        let incidence = h.incidence();
        let idspace = h.n() as u64;
        let globals = Globals {
            n: h.n(),
            idspace,
            max_degree: incidence.iter().map(Vec::len).max().unwrap_or(0),
            id_bits: bits_for(idspace),
        };
        let ctxs = (0..h.n())
            .map(|v| NodeContext {
                id: NodeId(v as u64),
                ports: incidence[v]
                    .iter()
                    .map(|&e| Port {
                        link: e,
                        peers: h.edges()[e]
                            .iter()
                            .filter(|&&u| u != v)
                            .map(|&u| NodeId(u as u64))
                            .collect(),
                    })
                    .collect(),
                globals,
            })
            .collect();
        let links = (0..h.n())
            .map(|v| {
                incidence[v]
                    .iter()
                    .map(|&e| {
                        h.edges()[e]
                            .iter()
                            .filter(|&&u| u != v)
                            .map(|&u| {
                                let back = incidence[u].binary_search(&e).expect("incidence lists agree");
                                (u, back)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Topology { ctxs, links, hyper: true, id_bits: globals.id_bits }
    }
}

/// Runs `program` on every node of `g`.
pub fn run<P: NodeProgram>(
    g: &Graph,
    program: &P,
    config: &SimConfig,
) -> Result<RunReport<P::Output>, SimError> {
    execute(&Topology::of_graph(g), program, config)
}

/// Runs `program` on a hypergraph: each port is an incident hyperedge and a
/// message sent on it reaches every other vertex of that hyperedge. Each
/// such broadcast counts as one message.
pub fn run_hypergraph<P: NodeProgram>(
    h: &Hypergraph,
    program: &P,
    config: &SimConfig,
) -> Result<RunReport<P::Output>, SimError> {
    execute(&Topology::of_hypergraph(h), program, config)
}

fn execute<P: NodeProgram>(
    topo: &Topology,
    program: &P,
    config: &SimConfig,
) -> Result<RunReport<P::Output>, SimError> {
    let n = topo.ctxs.len();
    let cap = config.cap_bits(topo.id_bits);
    let mut states: Vec<P::State> = if config.parallel {
        topo.ctxs.par_iter().map(|c| program.init(c)).collect()
    } else {
        topo.ctxs.iter().map(|c| program.init(c)).collect()
    };
    let mut halted: Vec<bool> = states.iter().map(|s| program.is_halted(s)).collect();
    let mut stats = RunStats::default();
    let mut transcript = config.record_transcript.then(Vec::new);
    let mut round = 0;

    while halted.iter().any(|h| !h) {
        if round == config.max_rounds {
            return Err(SimError::NonTermination { max_rounds: config.max_rounds });
        }
        round += 1;

        let send = |(i, s): (usize, &P::State)| {
            (!halted[i]).then(|| program.send(&topo.ctxs[i], s, round))
        };
        let outboxes: Vec<Option<Outbox>> = if config.parallel {
            states.par_iter().enumerate().map(send).collect()
        } else {
            states.iter().enumerate().map(send).collect()
        };

        let mut inboxes: Vec<Inbox> = topo.ctxs.iter().map(|c| Inbox::new(c.degree())).collect();
        let mut records = Vec::new();
        for (i, outbox) in outboxes.into_iter().enumerate() {
            let Some(outbox) = outbox else { continue };
            let ctx = &topo.ctxs[i];
            if outbox.len() != ctx.degree() {
                return Err(SimError::OutboxShape {
                    node: ctx.id,
                    expected: ctx.degree(),
                    got: outbox.len(),
                });
            }
            for (port, msg) in outbox.into_slots().into_iter().enumerate() {
                let Some(msg) = msg else { continue };
                let bits = msg.bit_len();
                if let Some(cap) = cap.filter(|&c| bits > c) {
                    return Err(if topo.hyper {
                        SimError::HyperMessageTooLarge {
                            round,
                            from: ctx.id,
                            hyperedge: ctx.ports[port].link,
                            bits,
                            cap,
                        }
                    } else {
                        SimError::MessageTooLarge { round, from: ctx.id, to: ctx.neighbor(port), bits, cap }
                    });
                }
                stats.total_messages += 1;
                stats.total_bits += bits;
                stats.max_message_bits = stats.max_message_bits.max(bits);
                for &(k, back) in &topo.links[i][port] {
                    if transcript.is_some() {
                        records.push(MessageRecord {
                            from: ctx.id,
                            to: topo.ctxs[k].id,
                            edge: topo.hyper.then_some(ctx.ports[port].link),
                            bits,
                        });
                    }
                    inboxes[k].push(back, ctx.id, msg.clone());
                }
            }
        }
        if let Some(t) = transcript.as_mut() {
            t.push(RoundTranscript { round, msgs: records });
        }

        let receive = |((i, s), inbox): ((usize, &mut P::State), Inbox)| {
            if !halted[i] {
                program.receive(&topo.ctxs[i], s, round, &inbox);
            }
        };
        if config.parallel {
            states.par_iter_mut().enumerate().zip(inboxes).for_each(receive);
        } else {
            states.iter_mut().enumerate().zip(inboxes).for_each(receive);
        }
        for (h, s) in halted.iter_mut().zip(&states) {
            *h = *h || program.is_halted(s);
        }
        stats.rounds_used = round;
    }

    let outputs = states
        .into_iter()
        .enumerate()
        .map(|(i, s)| (topo.ctxs[i].id, program.output(&topo.ctxs[i], s)))
        .collect::<BTreeMap<_, _>>();
    debug_assert_eq!(outputs.len(), n);
    Ok(RunReport { stats, outputs, halted_all: true, cap_bits: cap, transcript })
}

#[cfg(test)]
mod tests;
