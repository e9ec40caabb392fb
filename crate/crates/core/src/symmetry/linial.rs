//! Linial-style color reduction with polynomial cover-free families.
//!
//! A color `c < q^(k+1)` is read as the coefficient vector of a polynomial
//! `p_c` of degree `<= k` over `F_q`. Two distinct polynomials agree on at most
//! `k` points, so with `q >= k*delta + 1` a node always finds a point `x` where
//! `p_c(x)` differs from all (at most `delta`) neighbor polynomials. The new
//! color is `x*q + p_c(x) < q^2`, and nodes choosing the same `x` get
//! different values. Every node derives the same schedule from `delta` and
//! the initial palette, so the round count is fixed in advance.

use serde::{Deserialize, Serialize};

use crate::sim::{Inbox, Message, MessageBuilder, NodeContext, Outbox, Protocol};

/// Palettes stabilize at no more than `LINIAL_C * delta^2` colors.
pub const LINIAL_C: u64 = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinialStep {
    /// Polynomial degree.
    pub k: u32,
    /// Field size; the step maps into `q^2` colors.
    pub q: u64,
    /// Palette size before the step.
    pub colors_in: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinialSchedule {
    pub degree: usize,
    pub initial: u128,
    pub steps: Vec<LinialStep>,
}

impl LinialSchedule {
    /// Applies reduction steps while they shrink the palette. With `degree`
    /// zero there are no conflicts and everyone takes color 0 without
    /// communicating.
    pub fn new(degree: usize, initial: u128) -> Self {
        let mut steps = Vec::new();
        let mut m = initial;
        if degree > 0 {
            while let Some((k, q)) = best_step(degree as u64, m) {
                steps.push(LinialStep { k, q, colors_in: m });
                m = q as u128 * q as u128;
            }
        }
        LinialSchedule { degree, initial, steps }
    }

    pub fn rounds(&self) -> usize {
        self.steps.len()
    }

    /// Number of colors after the last step.
    pub fn palette(&self) -> u128 {
        match self.steps.last() {
            _ if self.degree == 0 => 1,
            Some(s) => s.q as u128 * s.q as u128,
            None => self.initial.max(1),
        }
    }
}

/// The `(k, q)` minimizing `q^2 < m`; smallest `k` on ties.
fn best_step(delta: u64, m: u128) -> Option<(u32, u64)> {
    let mut lower: Vec<(u64, u32)> = (1..=64u32)
        .map(|k| ((k as u64 * delta + 1).max(ceil_root(m, k + 1)), k))
        .collect();
    lower.sort_unstable();
    let mut best: Option<(u64, u32)> = None;
    for (lb, k) in lower {
        if best.is_some_and(|(q, _)| lb > q) {
            break;
        }
        let q = next_prime(lb);
        if best.is_none_or(|b| (q, k) < b) {
            best = Some((q, k));
        }
    }
    let (q, k) = best?;
    ((q as u128) * (q as u128) < m).then_some((k, q))
}

/// Smallest `r` with `r^e >= m`.
fn ceil_root(m: u128, e: u32) -> u64 {
    if m <= 1 {
        return 1;
    }
    let mut r = (m as f64).powf(1.0 / e as f64) as u64;
    r = r.saturating_sub(2).max(1);
    while !pow_at_least(r, e, m) {
        r += 1;
    }
    r
}

fn pow_at_least(r: u64, e: u32, m: u128) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = match acc.checked_mul(r as u128) {
            Some(v) => v,
            None => return true,
        };
        if acc >= m {
            return true;
        }
    }
    acc >= m
}

pub(crate) fn next_prime(mut x: u64) -> u64 {
    x = x.max(2);
    while !is_prime(x) {
        x += 1;
    }
    x
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Bits needed for a value below `m`.
pub(crate) fn width_of(m: u128) -> u32 {
    (128 - m.saturating_sub(1).leading_zeros()).max(1)
}

fn eval(color: u128, k: u32, q: u64, x: u64) -> u64 {
    let q128 = q as u128;
    let mut digits = Vec::with_capacity(k as usize + 1);
    let mut c = color;
    for _ in 0..=k {
        digits.push((c % q128) as u64);
        c /= q128;
    }
    debug_assert_eq!(c, 0, "color {color} has more than {} digits in base {q}", k + 1);
    digits.iter().rev().fold(0u64, |acc, &a| ((acc as u128 * x as u128 + a as u128) % q128) as u64)
}

/// One reduction step for a node whose conflicting neighbors hold `others`.
pub(crate) fn recolor(color: u128, step: &LinialStep, others: &[u128]) -> u128 {
    let LinialStep { k, q, .. } = *step;
    for x in 0..q {
        let mine = eval(color, k, q, x);
        if others.iter().all(|&o| eval(o, k, q, x) != mine) {
            return x as u128 * q as u128 + mine as u128;
        }
    }
    unreachable!("q = {q} > k * degree guarantees a free point")
}

pub(crate) fn color_message(colors: impl IntoIterator<Item = u128>, m: u128) -> Message {
    let w = width_of(m);
    let mut b = MessageBuilder::new();
    for c in colors {
        b.push_wide(c, w);
    }
    b.finish()
}

pub(crate) fn read_colors(msg: &Message, m: u128) -> Vec<u128> {
    let w = width_of(m);
    let mut r = msg.reader();
    (0..msg.bit_len() / w as usize).map(|_| r.read_wide(w)).collect()
}

/// Participation in a coloring run: the starting color and the ports that
/// lead to other participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinialInput {
    pub color: u128,
    pub ports: Vec<usize>,
}

/// Vertex coloring of the subgraph spanned by the participants.
///
/// Output: the final color of participants, `None` for everybody else.
#[derive(Debug, Clone)]
pub struct NodeLinial {
    pub schedule: LinialSchedule,
}

impl NodeLinial {
    pub fn new(degree: usize, initial: u128) -> Self {
        NodeLinial { schedule: LinialSchedule::new(degree, initial) }
    }
}

impl Protocol for NodeLinial {
    type Input = Option<LinialInput>;
    type State = Option<LinialInput>;
    type Output = Option<u64>;

    fn rounds(&self) -> usize {
        self.schedule.rounds()
    }

    fn start(&self, _ctx: &NodeContext, input: Self::Input) -> Self::State {
        input
    }

    fn send(&self, ctx: &NodeContext, state: &Self::State, round: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        if let Some(s) = state {
            let msg = color_message([s.color], self.schedule.steps[round].colors_in);
            for &p in &s.ports {
                out.send(p, msg.clone());
            }
        }
        out
    }

    fn receive(&self, _ctx: &NodeContext, state: &mut Self::State, round: usize, inbox: &Inbox) {
        let Some(s) = state else { return };
        let step = &self.schedule.steps[round];
        let others: Vec<u128> = s
            .ports
            .iter()
            .filter_map(|&p| inbox.get(p))
            .flat_map(|m| read_colors(m, step.colors_in))
            .collect();
        s.color = recolor(s.color, step, &others);
    }

    fn finish(&self, _ctx: &NodeContext, state: Self::State) -> Self::Output {
        state.map(|s| {
            if self.schedule.degree == 0 {
                0
            } else {
                u64::try_from(s.color).expect("final palette fits in 64 bits")
            }
        })
    }
}

/// Coloring of the line graph of the subgraph formed by the given incident
/// edges (`ports`). An edge's initial color is `lo * idspace + hi`; each
/// round a node tells every selected neighbor the colors of its other
/// selected edges, after which both endpoints know the full conflict set of
/// their shared edge and compute the same new color.
///
/// Output: `(port, color)` for each selected edge.
#[derive(Debug, Clone)]
pub struct EdgeLinial {
    pub schedule: LinialSchedule,
}

impl EdgeLinial {
    /// `degree` bounds the line-graph degree, `2 * (max selected degree - 1)`.
    pub fn new(degree: usize, idspace: u64) -> Self {
        let space = idspace as u128;
        EdgeLinial { schedule: LinialSchedule::new(degree, space * space) }
    }
}

impl Protocol for EdgeLinial {
    type Input = Vec<usize>;
    type State = Vec<(usize, u128)>;
    type Output = Vec<(usize, u64)>;

    fn rounds(&self) -> usize {
        self.schedule.rounds()
    }

    fn start(&self, ctx: &NodeContext, ports: Vec<usize>) -> Self::State {
        let space = ctx.globals.idspace as u128;
        ports
            .into_iter()
            .map(|p| {
                let (a, b) = (ctx.id.0.min(ctx.neighbor(p).0), ctx.id.0.max(ctx.neighbor(p).0));
                (p, a as u128 * space + b as u128)
            })
            .collect()
    }

    fn send(&self, ctx: &NodeContext, state: &Self::State, round: usize) -> Outbox {
        let mut out = Outbox::silent(ctx);
        let m = self.schedule.steps[round].colors_in;
        if state.len() > 1 {
            for &(p, _) in state {
                let others = state.iter().filter(|&&(q, _)| q != p).map(|&(_, c)| c);
                out.send(p, color_message(others, m));
            }
        }
        out
    }

    fn receive(&self, _ctx: &NodeContext, state: &mut Self::State, round: usize, inbox: &Inbox) {
        let step = &self.schedule.steps[round];
        let old = state.clone();
        for (p, color) in state.iter_mut() {
            let mut others: Vec<u128> =
                old.iter().filter(|&&(q, _)| q != *p).map(|&(_, c)| c).collect();
            if let Some(m) = inbox.get(*p) {
                others.extend(read_colors(m, step.colors_in));
            }
            *color = recolor(*color, step, &others);
        }
    }

    fn finish(&self, _ctx: &NodeContext, state: Self::State) -> Self::Output {
        state
            .into_iter()
            .map(|(p, c)| {
                let c = if self.schedule.degree == 0 { 0 } else { c };
                (p, u64::try_from(c).expect("final palette fits in 64 bits"))
            })
            .collect()
    }
}
