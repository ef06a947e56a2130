//! The iteration skeleton shared by simple STA and dynamic STA.
//!
//! One outer iteration applies every operator of the configured set in
//! order. Each application draws `se` neighbors of the working state, keeps
//! the cheapest, and accepts it if it is strictly better. In dynamic mode a
//! worse round-best is still accepted with probability `risk_prob`. After all
//! operators the incumbent is updated greedily, and in dynamic mode the
//! working state is reset to the incumbent with probability `restore_prob`.
//!
//! Random draws happen in a fixed order (neighbor sampling, then the risk
//! draw of that round, then the restore draw), so a run is a pure function of
//! the problem and the parameters, seed included. The generator is ChaCha8
//! seeded with [`rand::SeedableRng::seed_from_u64`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{Neighborhood, Operator, OperatorKind};

/// The generator every run uses.
pub type StaRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Greedy acceptance only.
    #[serde(rename = "STA")]
    Simple,
    /// Greedy acceptance plus risk and restore in probability.
    #[serde(rename = "DSTA")]
    Dynamic,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Simple => "STA",
            Mode::Dynamic => "DSTA",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sta" | "simple" => Ok(Mode::Simple),
            "dsta" | "dynamic" => Ok(Mode::Dynamic),
            other => Err(Error::InvalidParams(format!("unknown mode `{other}`"))),
        }
    }
}

/// Every knob of the algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaParams {
    /// Search enforcement: neighbors drawn per operator application.
    pub se: usize,
    pub swap_factor: usize,
    pub shift_factor: usize,
    pub symmetry_factor: usize,
    pub substitute_factor: usize,
    /// Probability of resetting the working state to the incumbent (dynamic mode).
    pub restore_prob: f64,
    /// Probability of accepting a worse round-best (dynamic mode).
    pub risk_prob: f64,
    pub max_iters: usize,
    pub mode: Mode,
    pub seed: u64,
    pub operators: Vec<OperatorKind>,
}

impl Default for StaParams {
    fn default() -> Self {
        StaParams {
            se: 64,
            swap_factor: 2,
            shift_factor: 1,
            symmetry_factor: 0,
            substitute_factor: 1,
            restore_prob: 0.1459,
            risk_prob: 0.0557,
            max_iters: 1500,
            mode: Mode::Dynamic,
            seed: 0,
            operators: OperatorKind::ALL.to_vec(),
        }
    }
}

impl StaParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.se < 1 {
            return fail("se must be ≥ 1".into());
        }
        if self.swap_factor < 2 {
            return fail(format!("swap factor must be ≥ 2, got {}", self.swap_factor));
        }
        if self.shift_factor < 1 {
            return fail("shift factor must be ≥ 1".into());
        }
        if self.substitute_factor < 1 {
            return fail("substitute factor must be ≥ 1".into());
        }
        for (name, p) in [("restore", self.restore_prob), ("risk", self.risk_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} probability {p} outside [0, 1]"));
            }
        }
        if self.max_iters < 1 {
            return fail("max_iters must be ≥ 1".into());
        }
        if self.operators.is_empty() {
            return fail("operator set is empty".into());
        }
        Ok(())
    }

    /// The operator of `kind` carrying its configured factor.
    pub fn operator(&self, kind: OperatorKind) -> Operator {
        match kind {
            OperatorKind::Swap => Operator::Swap(self.swap_factor),
            OperatorKind::Shift => Operator::Shift(self.shift_factor),
            OperatorKind::Symmetry => Operator::Symmetry(self.symmetry_factor),
            OperatorKind::Substitute => Operator::Substitute(self.substitute_factor),
        }
    }

    /// Drops operators the representation `S` does not support.
    pub fn restricted_to<S: Neighborhood>(mut self) -> Self {
        self.operators.retain(|&k| S::supports(k));
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }
}

/// An objective over a representation the operators can move in.
///
/// `cost` must be a pure function of the state and the instance.
pub trait Problem: Sync {
    type State: Neighborhood;

    fn cost(&self, state: &Self::State) -> f64;

    fn random_state<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::State;
}

/// Working state and incumbent of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchState<S> {
    pub current: S,
    pub current_cost: f64,
    pub incumbent: S,
    pub incumbent_cost: f64,
    pub evaluations: u64,
}

impl<S: Clone> SearchState<S> {
    pub fn new(initial: S, cost: f64) -> Self {
        SearchState {
            current: initial.clone(),
            current_cost: cost,
            incumbent: initial,
            incumbent_cost: cost,
            evaluations: 1,
        }
    }

    /// Greedy incumbent update.
    pub fn update_incumbent(&mut self) {
        if self.current_cost < self.incumbent_cost {
            self.incumbent = self.current.clone();
            self.incumbent_cost = self.current_cost;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub current_cost: f64,
    pub incumbent_cost: f64,
}

#[derive(Debug, Clone)]
pub struct RunResult<S> {
    pub best_solution: S,
    pub best_cost: f64,
    /// One entry per outer iteration, recorded after the restore step.
    pub trace: Vec<TracePoint>,
    pub evaluations: u64,
    pub wall_time: Duration,
}

/// Whether a round-best with `candidate_cost` replaces the working state.
///
/// The risk draw is only consumed in dynamic mode and only when the
/// candidate is not strictly better.
pub fn accept_candidate<R: Rng + ?Sized>(
    current_cost: f64,
    candidate_cost: f64,
    mode: Mode,
    risk_prob: f64,
    rng: &mut R,
) -> bool {
    if candidate_cost < current_cost {
        return true;
    }
    match mode {
        Mode::Simple => false,
        Mode::Dynamic => rng.random::<f64>() < risk_prob,
    }
}

/// In dynamic mode, with probability `restore_prob`, resets the working
/// state to the incumbent. Returns whether the reset happened.
pub fn restore_step<S: Clone, R: Rng + ?Sized>(
    state: &mut SearchState<S>,
    mode: Mode,
    restore_prob: f64,
    rng: &mut R,
) -> bool {
    if mode == Mode::Simple || rng.random::<f64>() >= restore_prob {
        return false;
    }
    state.current = state.incumbent.clone();
    state.current_cost = state.incumbent_cost;
    true
}

/// One application of `op`: `params.se` samples, stable argmin, acceptance.
pub fn operator_round<P: Problem, R: Rng + ?Sized>(
    state: &mut SearchState<P::State>,
    op: Operator,
    problem: &P,
    params: &StaParams,
    rng: &mut R,
) -> Result<()> {
    let mut best: Option<(P::State, f64)> = None;
    for _ in 0..params.se {
        let candidate = match state.current.sample(op, rng) {
            Ok(s) => s,
            // Nothing to move to: the round sees the current state itself.
            Err(Error::NoDistinctNeighbor(_)) => state.current.clone(),
            Err(e) => return Err(e),
        };
        let cost = problem.cost(&candidate);
        state.evaluations += 1;
        if best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((candidate, cost));
        }
    }
    let (candidate, cost) = best.expect("se ≥ 1");
    if accept_candidate(state.current_cost, cost, params.mode, params.risk_prob, rng) {
        state.current = candidate;
        state.current_cost = cost;
    }
    Ok(())
}

fn check_compatible<S: Neighborhood>(params: &StaParams) -> Result<()> {
    match params.operators.iter().find(|&&k| !S::supports(k)) {
        Some(&operator) => Err(Error::IncompatibleOperator { operator, representation: S::REPRESENTATION }),
        None => Ok(()),
    }
}

/// Runs the algorithm with a generator seeded from `params.seed`.
pub fn run<P: Problem>(problem: &P, params: &StaParams) -> Result<RunResult<P::State>> {
    let mut rng = StaRng::seed_from_u64(params.seed);
    run_with_rng(problem, params, &mut rng)
}

pub fn run_with_rng<P: Problem, R: Rng + ?Sized>(
    problem: &P,
    params: &StaParams,
    rng: &mut R,
) -> Result<RunResult<P::State>> {
    params.validate()?;
    check_compatible::<P::State>(params)?;
    let started = Instant::now();

    let initial = problem.random_state(rng);
    let cost = problem.cost(&initial);
    let mut state = SearchState::new(initial, cost);
    let ops: Vec<Operator> = params.operators.iter().map(|&k| params.operator(k)).collect();
    let mut trace = Vec::with_capacity(params.max_iters);

    for iteration in 1..=params.max_iters {
        for &op in &ops {
            operator_round(&mut state, op, problem, params, rng)?;
        }
        state.update_incumbent();
        restore_step(&mut state, params.mode, params.restore_prob, rng);
        trace.push(TracePoint { iteration, current_cost: state.current_cost, incumbent_cost: state.incumbent_cost });
    }

    Ok(RunResult {
        best_solution: state.incumbent,
        best_cost: state.incumbent_cost,
        trace,
        evaluations: state.evaluations,
        wall_time: started.elapsed(),
    })
}
