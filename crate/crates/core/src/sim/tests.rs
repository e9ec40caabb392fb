use super::*;
use crate::graph::generate;

/// Halts immediately and outputs its own ID.
struct Idle;

impl NodeProgram for Idle {
    type State = ();
    type Output = NodeId;
    fn init(&self, _: &NodeContext) {}
    fn is_halted(&self, _: &()) -> bool {
        true
    }
    fn send(&self, ctx: &NodeContext, _: &(), _: usize) -> Outbox {
        Outbox::silent(ctx)
    }
    fn receive(&self, _: &NodeContext, _: &mut (), _: usize, _: &Inbox) {}
    fn output(&self, ctx: &NodeContext, _: ()) -> NodeId {
        ctx.id
    }
}

/// One round: broadcast own ID, output the minimum ID seen.
struct MinId {
    extra_bits: u32,
}

struct MinState {
    best: u64,
    done: bool,
}

impl NodeProgram for MinId {
    type State = MinState;
    type Output = u64;
    fn init(&self, ctx: &NodeContext) -> MinState {
        MinState { best: ctx.id.0, done: false }
    }
    fn is_halted(&self, s: &MinState) -> bool {
        s.done
    }
    fn send(&self, ctx: &NodeContext, _: &MinState, _: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        let width = ctx.globals.id_bits + self.extra_bits;
        out.broadcast(MessageBuilder::new().push(ctx.id.0, width).finish());
        out
    }
    fn receive(&self, ctx: &NodeContext, s: &mut MinState, _: usize, inbox: &Inbox) {
        let width = ctx.globals.id_bits + self.extra_bits;
        for (_, _, m) in inbox.iter() {
            s.best = s.best.min(m.reader().read(width));
        }
        s.done = true;
    }
    fn output(&self, _: &NodeContext, s: MinState) -> u64 {
        s.best
    }
}

/// Never halts.
struct Forever;

impl NodeProgram for Forever {
    type State = ();
    type Output = ();
    fn init(&self, _: &NodeContext) {}
    fn is_halted(&self, _: &()) -> bool {
        false
    }
    fn send(&self, ctx: &NodeContext, _: &(), _: usize) -> Outbox {
        Outbox::silent(ctx)
    }
    fn receive(&self, _: &NodeContext, _: &mut (), _: usize, _: &Inbox) {}
    fn output(&self, _: &NodeContext, _: ()) {}
}

#[test]
fn halting_in_init_uses_no_rounds() {
    let g = generate::ring(6);
    let r = run(&g, &Idle, &SimConfig::default()).unwrap();
    assert_eq!(r.rounds_used(), 0);
    assert_eq!(r.stats.total_messages, 0);
    assert!(r.halted_all);
    assert!(r.outputs.iter().all(|(k, v)| k == v));
}

#[test]
fn one_round_minimum_on_single_edge() {
    let g = Graph::new(8, [NodeId(3), NodeId(7)], [(NodeId(3), NodeId(7))]).unwrap();
    let r = run(&g, &MinId { extra_bits: 0 }, &SimConfig::default()).unwrap();
    assert_eq!(r.rounds_used(), 1);
    assert_eq!(r.outputs.values().copied().collect::<Vec<_>>(), vec![3, 3]);
    assert_eq!(r.max_message_bits(), 3);
    assert_eq!(r.cap_bits, Some(24));
    assert_eq!(r.stats.total_messages, 2);
}

#[test]
fn oversized_message_is_rejected_in_round_one() {
    let g = generate::path(4);
    let config = SimConfig { cap: MessageCap::Bits(2), ..SimConfig::default() };
    // ids need 2 bits, one extra bit makes cap + 1
    let err = run(&g, &MinId { extra_bits: 1 }, &config).unwrap_err();
    assert_eq!(
        err,
        SimError::MessageTooLarge { round: 1, from: NodeId(0), to: NodeId(1), bits: 3, cap: 2 }
    );
    assert!(run(&g, &MinId { extra_bits: 1 }, &SimConfig::unlimited()).is_ok());
}

#[test]
fn default_cap_scales_with_id_bits() {
    let g = generate::path(4);
    // 2 id bits * 8 = 16
    assert!(run(&g, &MinId { extra_bits: 14 }, &SimConfig::default()).is_ok());
    assert!(matches!(
        run(&g, &MinId { extra_bits: 15 }, &SimConfig::default()),
        Err(SimError::MessageTooLarge { bits: 17, cap: 16, .. })
    ));
}

#[test]
fn non_termination_is_reported() {
    let g = generate::path(2);
    let config = SimConfig { max_rounds: 5, ..SimConfig::default() };
    assert_eq!(run(&g, &Forever, &config).unwrap_err(), SimError::NonTermination { max_rounds: 5 });
}

#[test]
fn hypergraph_broadcast_minimum() {
    let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
    let r = run_hypergraph(&h, &MinId { extra_bits: 0 }, &SimConfig::default().with_transcript())
        .unwrap();
    assert_eq!(r.rounds_used(), 1);
    assert!(r.outputs.values().all(|&v| v == 0));
    assert_eq!(r.stats.total_messages, 3);
    let t = r.transcript.unwrap();
    assert_eq!(t[0].msgs.len(), 6);
    assert!(t[0].msgs.iter().all(|m| m.edge == Some(0)));
}

#[test]
fn hypergraph_messages_counted_per_hyperedge() {
    // vertex 0 sits in three hyperedges
    let h = Hypergraph::new(5, vec![vec![0, 1], vec![0, 2, 3], vec![0, 4]]).unwrap();
    let r = run_hypergraph(&h, &MinId { extra_bits: 0 }, &SimConfig::default()).unwrap();
    // 3 sends from vertex 0, one each from the other four
    assert_eq!(r.stats.total_messages, 7);
}

#[test]
fn rank_two_hypergraph_matches_graph_run() {
    let g = generate::erdos_renyi(30, 0.2, 4).unwrap();
    let h = Hypergraph::new(
        g.n(),
        g.edges().iter().map(|e| vec![e.lo().0 as usize, e.hi().0 as usize]).collect(),
    )
    .unwrap();
    let a = run(&g, &MinId { extra_bits: 0 }, &SimConfig::default()).unwrap();
    let b = run_hypergraph(&h, &MinId { extra_bits: 0 }, &SimConfig::default()).unwrap();
    assert_eq!(a.outputs, b.outputs);
    assert_eq!(a.stats, b.stats);
}

#[test]
fn runs_are_deterministic_and_order_independent() {
    let g = generate::assign_ids(
        &generate::erdos_renyi(80, 0.1, 9).unwrap(),
        generate::IdMode::Random,
        9,
    );
    let serial = SimConfig::default().with_transcript();
    let parallel = SimConfig { parallel: true, ..serial.clone() };
    let a = run(&g, &MinId { extra_bits: 0 }, &serial).unwrap();
    let b = run(&g, &MinId { extra_bits: 0 }, &serial).unwrap();
    let c = run(&g, &MinId { extra_bits: 0 }, &parallel).unwrap();
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    assert_eq!(ja, serde_json::to_string(&c).unwrap());
}

#[test]
fn transcript_json_lines() {
    let g = generate::path(3);
    let r = run(&g, &MinId { extra_bits: 0 }, &SimConfig::default().with_transcript()).unwrap();
    let mut buf = Vec::new();
    write_transcript(&mut buf, r.transcript.as_ref().unwrap()).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(
        text.trim_end(),
        r#"{"round":1,"msgs":[{"from":0,"to":1,"bits":2},{"from":1,"to":0,"bits":2},{"from":1,"to":2,"bits":2},{"from":2,"to":1,"bits":2}]}"#
    );
}

/// Two-round protocol: learn the neighbors' minimum, then the 2-hop minimum.
struct Spread;

impl Protocol for Spread {
    type Input = u64;
    type State = u64;
    type Output = u64;
    fn rounds(&self) -> usize {
        2
    }
    fn start(&self, _: &NodeContext, input: u64) -> u64 {
        input
    }
    fn send(&self, ctx: &NodeContext, s: &u64, _: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        out.broadcast(MessageBuilder::new().push(*s, ctx.globals.id_bits).finish());
        out
    }
    fn receive(&self, ctx: &NodeContext, s: &mut u64, _: usize, inbox: &Inbox) {
        for (_, _, m) in inbox.iter() {
            *s = (*s).min(m.reader().read(ctx.globals.id_bits));
        }
    }
    fn finish(&self, _: &NodeContext, s: u64) -> u64 {
        s
    }
}

#[test]
fn chained_protocols_share_the_round_counter() {
    let g = generate::path(6);
    let chain = Then::new(Carry::new(Spread), Spread, |_: &NodeContext, (orig, m): (u64, u64)| {
        assert!(m <= orig);
        m
    });
    let program = Scheduled::new(chain, |ctx: &NodeContext| (ctx.id.0, ctx.id.0));
    let r = run(&g, &program, &SimConfig::default()).unwrap();
    assert_eq!(r.rounds_used(), 4);
    let mins: Vec<u64> = r.outputs.values().copied().collect();
    assert_eq!(mins, vec![0, 0, 0, 0, 0, 1]);
}

#[test]
fn isolation_output_depends_only_on_local_ball() {
    // After two rounds node 5's output must equal a run on its 2-ball.
    let g = generate::path(9);
    let program = Scheduled::new(Spread, |ctx: &NodeContext| ctx.id.0);
    let full = run(&g, &program, &SimConfig::default()).unwrap();
    let ball = crate::graph::induced_subgraph(&g, &[NodeId(3), NodeId(4), NodeId(5), NodeId(6), NodeId(7)])
        .unwrap();
    let local = run(&ball, &program, &SimConfig::default()).unwrap();
    assert_eq!(full.outputs[&NodeId(5)], local.outputs[&NodeId(5)]);
}
