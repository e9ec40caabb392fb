use super::bfs::{relay_receive, relay_send};
use crate::sim::{Inbox, NodeContext, Outbox, Protocol};

/// Digit positions and base for splitting `colors` colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DigitSchedule {
    pub base: u64,
    pub num_digits: usize,
}

impl DigitSchedule {
    /// Smallest `t` with `base^t >= colors`.
    pub fn new(base: u64, colors: u64) -> Self {
        assert!(base >= 2, "base must be at least 2");
        let mut num_digits = 0;
        let mut reach: u128 = 1;
        while reach < colors as u128 {
            reach *= base as u128;
            num_digits += 1;
        }
        DigitSchedule { base, num_digits }
    }

    /// Digit `i` of `color`, least significant first.
    pub fn digit(&self, color: u64, i: usize) -> u64 {
        let mut c = color;
        for _ in 0..i {
            c /= self.base;
        }
        c % self.base
    }

    /// `(digit, value)` steps in execution order.
    pub fn steps(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        (0..self.num_digits).flat_map(move |i| (1..self.base).map(move |b| (i, b)))
    }
}

/// Participation in a B-ary run: the node's color and the ports leading to
/// other participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaryInput {
    pub color: u64,
    pub ports: Vec<usize>,
}

/// Where a participant ended up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaryNode {
    /// `(digit, value)` step at which the node left `R`.
    pub left_at: Option<(usize, u64)>,
}

/// B-ary digit splitting. `R` starts as all participants; for each digit
/// position `i` (least significant first) and value `b = 1..base-1`, members
/// whose digit `i` equals `b` leave `R` when a member with a smaller digit
/// `i` is within distance `alpha - 1`. Each step is a fresh bounded BFS of
/// `alpha - 1` rounds; nodes that left `R` keep relaying.
#[derive(Debug, Clone, Copy)]
pub struct Bary {
    pub alpha: usize,
    pub digits: DigitSchedule,
}

impl Bary {
    fn radius(&self) -> usize {
        self.alpha - 1
    }

    fn step(&self, round: usize) -> (usize, u64) {
        let per_digit = (self.digits.base - 1) as usize;
        let index = round / self.radius();
        (index / per_digit, (index % per_digit) as u64 + 1)
    }

    /// Distance at the start of `round`: a step begins with the remaining
    /// members whose digit is below the step value as sources.
    fn dist_at(&self, s: &BaryState, round: usize) -> usize {
        if !round.is_multiple_of(self.radius()) {
            return s.dist;
        }
        let (i, b) = self.step(round);
        if s.left_at.is_none() && self.digits.digit(s.input.color, i) < b {
            0
        } else {
            self.radius() + 1
        }
    }
}

#[derive(Debug, Clone)]
pub struct BaryState {
    input: BaryInput,
    left_at: Option<(usize, u64)>,
    dist: usize,
}

impl Protocol for Bary {
    type Input = Option<BaryInput>;
    type State = Option<BaryState>;
    type Output = Option<BaryNode>;

    fn rounds(&self) -> usize {
        self.radius() * self.digits.steps().count()
    }

    fn start(&self, _ctx: &NodeContext, input: Option<BaryInput>) -> Self::State {
        input.map(|input| BaryState { input, left_at: None, dist: 0 })
    }

    fn send(&self, ctx: &NodeContext, s: &Self::State, round: usize) -> Outbox {
        match s {
            Some(s) => relay_send(ctx, self.dist_at(s, round), round % self.radius(), &s.input.ports),
            None => Outbox::silent(ctx),
        }
    }

    fn receive(&self, _ctx: &NodeContext, s: &mut Self::State, round: usize, inbox: &Inbox) {
        let Some(s) = s else { return };
        let r = self.radius();
        s.dist = self.dist_at(s, round);
        relay_receive(&mut s.dist, round % r, &s.input.ports, inbox);
        let (i, b) = self.step(round);
        let digit = self.digits.digit(s.input.color, i);
        if round % r == r - 1 && s.left_at.is_none() && digit == b && s.dist <= r {
            s.left_at = Some((i, b));
        }
    }

    fn finish(&self, _ctx: &NodeContext, s: Self::State) -> Self::Output {
        s.map(|s| BaryNode { left_at: s.left_at })
    }
}
