//! Threshold cascade dynamics.
//!
//! A vertex with positive in-degree `d` is active after a step iff at least a
//! `rho` fraction of its in-neighbors were active before it. Vertices with
//! in-degree zero never change state. The reversible synchronous cascade
//! applies that rule to every vertex each round; the irreversible variant
//! never deactivates; the asynchronous variant lets a [`Scheduler`] pick which
//! changeable vertices update at each macro-step.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::InvalidThreshold;
use crate::fraction::Fraction;
use crate::graph::Graph;
use crate::rng::RngSeed;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CascadeMode {
    ReversibleSync,
    ReversibleAsync,
    Irreversible,
}

impl FromStr for CascadeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sync" | "reversible-sync" => Ok(Self::ReversibleSync),
            "async" | "reversible-async" => Ok(Self::ReversibleAsync),
            "irrev" | "irreversible" => Ok(Self::Irreversible),
            other => Err(format!("unknown cascade mode `{other}` (sync|async|irrev)")),
        }
    }
}

/// Activation fraction plus cascade mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig<R> {
    rho: R,
    mode: CascadeMode,
}

impl<R: Fraction> ThresholdConfig<R> {
    pub fn new(rho: R, mode: CascadeMode) -> Result<Self, InvalidThreshold> {
        if rho.is_valid() {
            Ok(Self { rho, mode })
        } else {
            Err(InvalidThreshold(rho.to_string()))
        }
    }

    pub fn rho(&self) -> R {
        self.rho
    }

    pub fn mode(&self) -> CascadeMode {
        self.mode
    }
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// Every vertex active at `round`, the first such round.
    AllActive {
        round: usize,
    },
    /// `state[round] == state[round + 1]` and not all-active. For
    /// asynchronous runs: no vertex was changeable after macro-step `round`.
    FixedPoint {
        round: usize,
    },
    /// `state[entry] == state[entry + period]`, `period >= 2` and minimal.
    Cycle {
        entry: usize,
        period: usize,
    },
    BudgetExhausted,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::AllActive { round } => write!(f, "all_active round {round}"),
            Termination::FixedPoint { round } => write!(f, "fixed_point round {round}"),
            Termination::Cycle { entry, period } => write!(f, "cycle period {period} entry {entry}"),
            Termination::BudgetExhausted => write!(f, "budget_exhausted"),
        }
    }
}

/// Per-round (or per macro-step) activity history of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeTrace {
    pub states: Vec<VertexSet>,
    pub termination: Termination,
    pub monotone: bool,
}

impl CascadeTrace {
    fn finish(states: Vec<VertexSet>, termination: Termination) -> Self {
        let monotone = states.windows(2).all(|w| w[0].is_subset(&w[1]));
        Self { states, termination, monotone }
    }

    /// Round at which every vertex became active, if it did.
    pub fn rounds_to_full(&self) -> Option<usize> {
        match self.termination {
            Termination::AllActive { round } => Some(round),
            _ => None,
        }
    }

    pub fn final_state(&self) -> &VertexSet {
        self.states.last().expect("trace always holds the seed state")
    }

    /// `round r: <hex>` per state, then `termination: <class>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (r, state) in self.states.iter().enumerate() {
            out.push_str(&format!("round {r}: {}\n", state.to_hex()));
        }
        out.push_str(&format!("termination: {}\n", self.termination));
        out
    }
}

/// Default round budget for a graph on `n` vertices.
pub const fn default_max_rounds(n: usize) -> usize {
    4 * n + 16
}

#[inline]
fn active_in_count(g: &Graph, state: &VertexSet, v: usize) -> usize {
    g.in_neighbors(v).iter().filter(|&&u| state.contains(u)).count()
}

/// Whether `v` would be active after one update from `state`.
#[inline]
fn wants_active<R: Fraction>(g: &Graph, rho: R, state: &VertexSet, v: usize) -> bool {
    let d = g.in_degree(v);
    if d == 0 {
        state.contains(v)
    } else {
        rho.reached_by(active_in_count(g, state, v), d)
    }
}

/// One synchronous reversible round.
pub fn sync_step<R: Fraction>(g: &Graph, state: &VertexSet, rho: R) -> VertexSet {
    let mut next = VertexSet::empty(g.n());
    for v in 0..g.n() {
        if wants_active(g, rho, state, v) {
            next.insert(v);
        }
    }
    next
}

/// One irreversible round: the reversible update unioned with `state`.
pub fn irreversible_step<R: Fraction>(g: &Graph, state: &VertexSet, rho: R) -> VertexSet {
    let mut next = sync_step(g, state, rho);
    next.union_with(state);
    next
}

/// Iterates `step` from `seeds` until all-active, a repeated state, or the budget.
///
/// Repeats are found by fingerprint and confirmed against the stored states,
/// so a reported cycle is always a true one.
fn run_deterministic<F>(seeds: &VertexSet, max_rounds: usize, mut step: F) -> CascadeTrace
where
    F: FnMut(&VertexSet) -> VertexSet,
{
    let mut states = vec![seeds.clone()];
    if seeds.is_full() {
        return CascadeTrace::finish(states, Termination::AllActive { round: 0 });
    }
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    seen.entry(seeds.fingerprint()).or_default().push(0);
    for round in 1..=max_rounds {
        let next = step(&states[round - 1]);
        let fp = next.fingerprint();
        let full = next.is_full();
        let earlier = seen.get(&fp).and_then(|rounds| rounds.iter().copied().find(|&r| states[r] == next));
        states.push(next);
        if full {
            return CascadeTrace::finish(states, Termination::AllActive { round });
        }
        if let Some(entry) = earlier {
            let period = round - entry;
            let termination = if period == 1 {
                Termination::FixedPoint { round: entry }
            } else {
                Termination::Cycle { entry, period }
            };
            return CascadeTrace::finish(states, termination);
        }
        seen.entry(fp).or_default().push(round);
    }
    CascadeTrace::finish(states, Termination::BudgetExhausted)
}

/// Synchronous reversible cascade from `seeds`, for at most `max_rounds` rounds.
pub fn run_sync<R: Fraction>(g: &Graph, seeds: &VertexSet, rho: R, max_rounds: usize) -> CascadeTrace {
    run_deterministic(seeds, max_rounds, |s| sync_step(g, s, rho))
}

/// Irreversible cascade; always reaches a fixed point within `n` rounds.
pub fn run_irreversible<R: Fraction>(g: &Graph, seeds: &VertexSet, rho: R) -> CascadeTrace {
    run_deterministic(seeds, g.n() + 1, |s| irreversible_step(g, s, rho))
}

/// `S ⊆ Active^(1)(S)`: no seed is lost in the first synchronous round.
pub fn check_seed_stability<R: Fraction>(g: &Graph, seeds: &VertexSet, rho: R) -> bool {
    seeds.iter().all(|v| wants_active(g, rho, seeds, v))
}

/// Consecutive states of `trace` are nested increasing.
pub fn is_monotone(trace: &CascadeTrace) -> bool {
    trace.states.windows(2).all(|w| w[0].is_subset(&w[1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchedulerPolicy {
    /// One vertex per step: the next changeable vertex in cyclic id order.
    RoundRobin,
    /// One vertex per step, uniform among the changeable ones.
    UniformRandom,
    /// One vertex per step, preferring deactivations, lowest id first.
    GreedyDeactivate,
    /// Every changeable vertex at once.
    FullSweep,
}

impl SchedulerPolicy {
    pub const ALL: [SchedulerPolicy; 4] = [
        SchedulerPolicy::RoundRobin,
        SchedulerPolicy::UniformRandom,
        SchedulerPolicy::GreedyDeactivate,
        SchedulerPolicy::FullSweep,
    ];
}

impl FromStr for SchedulerPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "round-robin" => Ok(Self::RoundRobin),
            "uniform" | "uniform-random" => Ok(Self::UniformRandom),
            "greedy-deactivate" => Ok(Self::GreedyDeactivate),
            "full-sweep" => Ok(Self::FullSweep),
            other => Err(format!("unknown scheduler `{other}` (round-robin|uniform|greedy-deactivate|full-sweep)")),
        }
    }
}

impl fmt::Display for SchedulerPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchedulerPolicy::RoundRobin => "round-robin",
            SchedulerPolicy::UniformRandom => "uniform",
            SchedulerPolicy::GreedyDeactivate => "greedy-deactivate",
            SchedulerPolicy::FullSweep => "full-sweep",
        })
    }
}

/// A progressive update schedule. It only ever selects vertices whose
/// update would change their state, and always selects at least one when
/// any exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scheduler {
    pub policy: SchedulerPolicy,
    pub seed: RngSeed,
}

impl Scheduler {
    pub fn new(policy: SchedulerPolicy, seed: RngSeed) -> Self {
        Self { policy, seed }
    }
}

struct SchedulerState {
    policy: SchedulerPolicy,
    cursor: usize,
    rng: ChaCha8Rng,
}

impl SchedulerState {
    /// `changeable` is ascending and nonempty.
    fn select(&mut self, changeable: &[usize], state: &VertexSet) -> Vec<usize> {
        match self.policy {
            SchedulerPolicy::FullSweep => changeable.to_vec(),
            SchedulerPolicy::RoundRobin => {
                let i = changeable.partition_point(|&v| v < self.cursor);
                let v = changeable.get(i).copied().unwrap_or(changeable[0]);
                self.cursor = v + 1;
                vec![v]
            }
            SchedulerPolicy::UniformRandom => {
                vec![changeable[self.rng.random_range(0..changeable.len())]]
            }
            SchedulerPolicy::GreedyDeactivate => {
                let v = changeable.iter().copied().find(|&v| state.contains(v)).unwrap_or(changeable[0]);
                vec![v]
            }
        }
    }
}

/// Asynchronous reversible cascade. Each macro-step flips every vertex the
/// scheduler selects, all evaluated against the pre-step state. Stops when
/// all vertices are active, when nothing is changeable, or after `max_steps`.
pub fn run_async<R: Fraction>(
    g: &Graph,
    seeds: &VertexSet,
    rho: R,
    scheduler: Scheduler,
    max_steps: usize,
) -> CascadeTrace {
    let n = g.n();
    let mut state = seeds.clone();
    let mut states = vec![state.clone()];
    if state.is_full() {
        return CascadeTrace::finish(states, Termination::AllActive { round: 0 });
    }
    let mut counts: Vec<usize> = (0..n).map(|v| active_in_count(g, &state, v)).collect();
    let mut sched = SchedulerState { policy: scheduler.policy, cursor: 0, rng: scheduler.seed.rng() };
    let mut changeable = Vec::new();
    let mut step = 0;
    loop {
        changeable.clear();
        changeable.extend((0..n).filter(|&v| {
            let d = g.in_degree(v);
            d > 0 && rho.reached_by(counts[v], d) != state.contains(v)
        }));
        if changeable.is_empty() {
            return CascadeTrace::finish(states, Termination::FixedPoint { round: step });
        }
        if step == max_steps {
            return CascadeTrace::finish(states, Termination::BudgetExhausted);
        }
        step += 1;
        for v in sched.select(&changeable, &state) {
            let activating = !state.contains(v);
            state.set(v, activating);
            for &w in g.out_neighbors(v) {
                if activating {
                    counts[w] += 1;
                } else {
                    counts[w] -= 1;
                }
            }
        }
        states.push(state.clone());
        if state.is_full() {
            return CascadeTrace::finish(states, Termination::AllActive { round: step });
        }
    }
}

/// Runs the cascade selected by `cfg.mode()`. `scheduler` is used only in
/// asynchronous mode (defaulting to round-robin); `budget` bounds rounds or
/// macro-steps and is ignored by the irreversible mode.
pub fn run_cascade<R: Fraction>(
    g: &Graph,
    seeds: &VertexSet,
    cfg: &ThresholdConfig<R>,
    scheduler: Option<Scheduler>,
    budget: usize,
) -> CascadeTrace {
    match cfg.mode() {
        CascadeMode::ReversibleSync => run_sync(g, seeds, cfg.rho(), budget),
        CascadeMode::Irreversible => run_irreversible(g, seeds, cfg.rho()),
        CascadeMode::ReversibleAsync => {
            let sched = scheduler.unwrap_or(Scheduler::new(SchedulerPolicy::RoundRobin, RngSeed::default()));
            run_async(g, seeds, cfg.rho(), sched, budget)
        }
    }
}
