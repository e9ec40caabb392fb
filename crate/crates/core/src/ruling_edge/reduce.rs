use crate::graph::EdgeId;
use crate::sim::{Inbox, Message, MessageBuilder, NodeContext, Outbox, Protocol};

pub const ROUNDS_PER_ITERATION: usize = 5;

/// Distance classes are capped here: class 4 stands for "4 or more".
pub const CLASS_CAP: u8 = 4;

/// Domination reduction, one iteration per unit of beta.
///
/// Each iteration classifies edges by line-graph distance to the current set
/// `R` (capped at [`CLASS_CAP`]) and adds a set `I` of class-2 edges:
///
/// * rounds 0-1: nodes on `R` flood two hops, so every node learns its
///   distance `delta` to the endpoints of `R`, capped at 3;
/// * round 2: neighbors exchange `delta`; an edge outside `R` has class
///   `1 + min(delta(u), delta(v))`;
/// * round 3: a node touching both class 2 and class 3 edges proposes its
///   smallest class-2 edge as a candidate;
/// * round 4: a node with a class-1 edge accepts its smallest incident
///   candidate and notifies the other endpoint.
///
/// Input: ports of the node's `R` edges. Output: the node's view after
/// every iteration.
#[derive(Debug, Clone, Copy)]
pub struct Reduce {
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReduceOutput {
    /// `R` ports after each iteration.
    pub stages: Vec<Vec<usize>>,
    /// Edge classes per port, as computed in each iteration.
    pub classes: Vec<Vec<u8>>,
}

#[derive(Debug, Clone)]
pub struct ReduceState {
    in_r: Vec<bool>,
    delta: u8,
    classes: Vec<u8>,
    candidates: Vec<usize>,
    out: ReduceOutput,
}

impl ReduceState {
    fn has_class(&self, c: u8) -> bool {
        self.classes.contains(&c)
    }

    /// This node's own candidate edge, if it proposes one.
    fn own_candidate(&self, ctx: &NodeContext) -> Option<usize> {
        if !(self.has_class(2) && self.has_class(3)) {
            return None;
        }
        smallest_edge(ctx, (0..self.classes.len()).filter(|&p| self.classes[p] == 2))
    }
}

fn smallest_edge(ctx: &NodeContext, ports: impl Iterator<Item = usize>) -> Option<usize> {
    ports.min_by_key(|&p| EdgeId::new(ctx.id, ctx.neighbor(p)))
}

impl Protocol for Reduce {
    type Input = Vec<usize>;
    type State = ReduceState;
    type Output = ReduceOutput;

    fn rounds(&self) -> usize {
        ROUNDS_PER_ITERATION * self.iterations
    }

    fn start(&self, ctx: &NodeContext, r_ports: Vec<usize>) -> ReduceState {
        let mut in_r = vec![false; ctx.degree()];
        for p in r_ports {
            in_r[p] = true;
        }
        ReduceState {
            in_r,
            delta: 3,
            classes: Vec::new(),
            candidates: Vec::new(),
            out: ReduceOutput::default(),
        }
    }

    fn send(&self, ctx: &NodeContext, s: &ReduceState, round: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        match round % ROUNDS_PER_ITERATION {
            0 if s.in_r.contains(&true) => out.broadcast(Message::empty()),
            1 if s.delta == 1 => out.broadcast(Message::empty()),
            2 => out.broadcast(MessageBuilder::new().push(s.delta as u64, 2).finish()),
            3 => {
                if let Some(p) = s.own_candidate(ctx) {
                    out.send(p, Message::empty());
                }
            }
            4 => {
                if let Some(p) = accepted(ctx, s) {
                    out.send(p, Message::empty());
                }
            }
            _ => {}
        }
        out
    }

    fn receive(&self, ctx: &NodeContext, s: &mut ReduceState, round: usize, inbox: &Inbox) {
        match round % ROUNDS_PER_ITERATION {
            0 => {
                s.delta = if s.in_r.contains(&true) {
                    0
                } else if !inbox.is_empty() {
                    1
                } else {
                    3
                };
            }
            1 => {
                if s.delta > 1 && !inbox.is_empty() {
                    s.delta = 2;
                }
            }
            2 => {
                s.classes = (0..ctx.degree())
                    .map(|p| {
                        if s.in_r[p] {
                            return 0;
                        }
                        let theirs = inbox.get(p).expect("every neighbor reports").reader().read(2) as u8;
                        (1 + s.delta.min(theirs)).min(CLASS_CAP)
                    })
                    .collect();
            }
            3 => {
                s.candidates = inbox.iter().map(|(p, _, _)| p).collect();
                s.candidates.extend(s.own_candidate(ctx));
            }
            _ => {
                if let Some(p) = accepted(ctx, s) {
                    s.in_r[p] = true;
                }
                for (p, _, _) in inbox.iter() {
                    s.in_r[p] = true;
                }
                s.out.stages.push((0..ctx.degree()).filter(|&p| s.in_r[p]).collect());
                s.out.classes.push(std::mem::take(&mut s.classes));
                s.candidates.clear();
            }
        }
    }

    fn finish(&self, _ctx: &NodeContext, s: ReduceState) -> ReduceOutput {
        s.out
    }
}

/// The candidate a node accepts in round 4, if it has a class-1 edge.
fn accepted(ctx: &NodeContext, s: &ReduceState) -> Option<usize> {
    if !s.has_class(1) {
        return None;
    }
    smallest_edge(ctx, s.candidates.iter().copied())
}
