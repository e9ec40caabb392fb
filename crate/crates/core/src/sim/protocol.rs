//! Fixed-schedule protocols.
//!
//! Every algorithm in this crate runs for a number of rounds that all nodes
//! can compute from global knowledge, so phases can be chained on a shared
//! round counter without any termination detection. [`Protocol`] is the
//! building block, [`Then`] sequences two protocols, [`Carry`] threads a
//! value through a phase unchanged, and [`Scheduled`] turns a protocol into a
//! [`NodeProgram`] that halts after the last round.

use super::{Inbox, NodeContext, NodeProgram, Outbox};

pub trait Protocol: Sync {
    type Input: Send;
    type State: Send + Sync;
    type Output: Send;

    /// Rounds this protocol takes; identical at every node.
    fn rounds(&self) -> usize;
    fn start(&self, ctx: &NodeContext, input: Self::Input) -> Self::State;
    /// `round` counts from 0 within this protocol.
    fn send(&self, ctx: &NodeContext, state: &Self::State, round: usize) -> Outbox;
    fn receive(&self, ctx: &NodeContext, state: &mut Self::State, round: usize, inbox: &Inbox);
    fn finish(&self, ctx: &NodeContext, state: Self::State) -> Self::Output;
}

/// `first`, then `second` on the adapted output of `first`.
pub struct Then<A, B, F> {
    pub first: A,
    pub second: B,
    pub adapt: F,
}

impl<A, B, F> Then<A, B, F> {
    pub fn new(first: A, second: B, adapt: F) -> Self {
        Then { first, second, adapt }
    }
}

pub enum ThenState<SA, SB> {
    First(SA),
    Second(SB),
    Moving,
}

impl<A, B, F> Then<A, B, F>
where
    A: Protocol,
    B: Protocol,
    F: Fn(&NodeContext, A::Output) -> B::Input + Sync,
{
    fn advance(&self, ctx: &NodeContext, state: &mut ThenState<A::State, B::State>) {
        if let ThenState::First(s) = std::mem::replace(state, ThenState::Moving) {
            let out = self.first.finish(ctx, s);
            *state = ThenState::Second(self.second.start(ctx, (self.adapt)(ctx, out)));
        }
    }
}

impl<A, B, F> Protocol for Then<A, B, F>
where
    A: Protocol,
    B: Protocol,
    F: Fn(&NodeContext, A::Output) -> B::Input + Sync,
{
    type Input = A::Input;
    type State = ThenState<A::State, B::State>;
    type Output = B::Output;

    fn rounds(&self) -> usize {
        self.first.rounds() + self.second.rounds()
    }

    fn start(&self, ctx: &NodeContext, input: A::Input) -> Self::State {
        let mut state = ThenState::First(self.first.start(ctx, input));
        if self.first.rounds() == 0 {
            self.advance(ctx, &mut state);
        }
        state
    }

    fn send(&self, ctx: &NodeContext, state: &Self::State, round: usize) -> Outbox {
        match state {
            ThenState::First(s) => self.first.send(ctx, s, round),
            ThenState::Second(s) => self.second.send(ctx, s, round - self.first.rounds()),
            ThenState::Moving => unreachable!("phase transition interrupted"),
        }
    }

    fn receive(&self, ctx: &NodeContext, state: &mut Self::State, round: usize, inbox: &Inbox) {
        match state {
            ThenState::First(s) => {
                self.first.receive(ctx, s, round, inbox);
                if round + 1 == self.first.rounds() {
                    self.advance(ctx, state);
                }
            }
            ThenState::Second(s) => {
                self.second.receive(ctx, s, round - self.first.rounds(), inbox)
            }
            ThenState::Moving => unreachable!("phase transition interrupted"),
        }
    }

    fn finish(&self, ctx: &NodeContext, state: Self::State) -> B::Output {
        match state {
            ThenState::Second(s) => self.second.finish(ctx, s),
            _ => unreachable!("finished before the second phase started"),
        }
    }
}

/// Runs `P` while passing a side value of type `T` through untouched.
pub struct Carry<P, T> {
    inner: P,
    _carried: std::marker::PhantomData<fn() -> T>,
}

impl<P, T> Carry<P, T> {
    pub fn new(inner: P) -> Self {
        Carry { inner, _carried: std::marker::PhantomData }
    }
}

impl<P: Protocol, T: Send + Sync> Protocol for Carry<P, T> {
    type Input = (T, P::Input);
    type State = (T, P::State);
    type Output = (T, P::Output);

    fn rounds(&self) -> usize {
        self.inner.rounds()
    }

    fn start(&self, ctx: &NodeContext, (carried, input): Self::Input) -> Self::State {
        (carried, self.inner.start(ctx, input))
    }

    fn send(&self, ctx: &NodeContext, state: &Self::State, round: usize) -> Outbox {
        self.inner.send(ctx, &state.1, round)
    }

    fn receive(&self, ctx: &NodeContext, state: &mut Self::State, round: usize, inbox: &Inbox) {
        self.inner.receive(ctx, &mut state.1, round, inbox)
    }

    fn finish(&self, ctx: &NodeContext, (carried, state): Self::State) -> Self::Output {
        (carried, self.inner.finish(ctx, state))
    }
}

/// A protocol plus a per-node input function, runnable by the simulator.
pub struct Scheduled<P, I> {
    pub protocol: P,
    pub input: I,
}

impl<P, I> Scheduled<P, I> {
    pub fn new(protocol: P, input: I) -> Self {
        Scheduled { protocol, input }
    }
}

pub struct ScheduledState<S> {
    inner: S,
    round: usize,
}

impl<P, I> NodeProgram for Scheduled<P, I>
where
    P: Protocol,
    I: Fn(&NodeContext) -> P::Input + Sync,
{
    type State = ScheduledState<P::State>;
    type Output = P::Output;

    fn init(&self, ctx: &NodeContext) -> Self::State {
        ScheduledState { inner: self.protocol.start(ctx, (self.input)(ctx)), round: 0 }
    }

    fn is_halted(&self, state: &Self::State) -> bool {
        state.round >= self.protocol.rounds()
    }

    fn send(&self, ctx: &NodeContext, state: &Self::State, _round: usize) -> Outbox {
        self.protocol.send(ctx, &state.inner, state.round)
    }

    fn receive(&self, ctx: &NodeContext, state: &mut Self::State, _round: usize, inbox: &Inbox) {
        self.protocol.receive(ctx, &mut state.inner, state.round, inbox);
        state.round += 1;
    }

    fn output(&self, ctx: &NodeContext, state: Self::State) -> P::Output {
        self.protocol.finish(ctx, state.inner)
    }
}
