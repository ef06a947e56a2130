//! Seeded multi-trial experiments and exhaustive oracles.

mod oracle;

pub use oracle::{
    brute_force_dvs, brute_force_maxcut, brute_force_qubo, brute_force_tsp, DvsOptimum, MaxCutOptimum, QuboOptimum,
    DVS_LIMIT, QUBO_LIMIT, TSP_LIMIT,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{self, Mode, Problem, RunResult, StaParams};
use crate::error::Result;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 output function; a bijection on `u64`.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in a batch started from `base_seed`.
///
/// For a fixed base the map is injective in `trial`: the odd stride keeps
/// `base + (trial + 1)·γ` distinct modulo 2⁶⁴ and the mixer is a bijection.
pub fn trial_seed(base_seed: u64, trial: usize) -> u64 {
    mix64(base_seed.wrapping_add((trial as u64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Summary of a batch of trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: usize,
    pub best: f64,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator); 0 for a single trial.
    pub std: f64,
    /// Percentage error of `best` against a reference, when one is known.
    pub error: Option<f64>,
    pub costs: Vec<f64>,
}

impl TrialStats {
    /// # Panics
    /// If `costs` is empty.
    pub fn from_costs(costs: Vec<f64>, sense: Sense) -> Self {
        assert!(!costs.is_empty(), "statistics of zero trials");
        let n = costs.len();
        let best = match sense {
            Sense::Minimize => costs.iter().copied().fold(f64::INFINITY, f64::min),
            Sense::Maximize => costs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        };
        let mean = costs.iter().sum::<f64>() / n as f64;
        let std =
            if n > 1 { (costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt() } else { 0.0 };
        TrialStats { trials: n, best, mean, std, error: None, costs }
    }

    pub fn with_error(mut self, error: f64) -> Self {
        self.error = Some(error);
        self
    }
}

#[derive(Debug, Clone)]
pub struct Trial<S> {
    pub index: usize,
    pub seed: u64,
    pub result: RunResult<S>,
}

/// Runs `trials` independent runs, trial `i` seeded with
/// `trial_seed(base_seed, i)`. Results come back in trial order whatever
/// the thread schedule.
pub fn run_trials_detailed<P: Problem>(
    problem: &P,
    params: &StaParams,
    trials: usize,
    base_seed: u64,
) -> Result<Vec<Trial<P::State>>> {
    params.validate()?;
    (0..trials)
        .into_par_iter()
        .map(|index| {
            let seed = trial_seed(base_seed, index);
            let p = params.clone().with_seed(seed);
            engine::run(problem, &p).map(|result| Trial { index, seed, result })
        })
        .collect()
}

/// Statistics over the best cost of each trial.
pub fn run_trials<P: Problem>(problem: &P, params: &StaParams, trials: usize, base_seed: u64) -> Result<TrialStats> {
    if trials == 0 {
        return Err(crate::Error::InvalidParams("trials must be ≥ 1".into()));
    }
    let runs = run_trials_detailed(problem, params, trials, base_seed)?;
    Ok(TrialStats::from_costs(runs.iter().map(|t| t.result.best_cost).collect(), Sense::Minimize))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeComparison {
    pub simple: TrialStats,
    pub dynamic: TrialStats,
    /// `dynamic.mean − simple.mean`.
    pub mean_difference: f64,
    /// `dynamic.best − simple.best`.
    pub best_difference: f64,
}

/// Runs both modes with the same per-trial seeds.
pub fn compare_modes<P: Problem>(
    problem: &P,
    params: &StaParams,
    trials: usize,
    base_seed: u64,
) -> Result<ModeComparison> {
    let simple = run_trials(problem, &params.clone().with_mode(Mode::Simple), trials, base_seed)?;
    let dynamic = run_trials(problem, &params.clone().with_mode(Mode::Dynamic), trials, base_seed)?;
    Ok(ModeComparison {
        mean_difference: dynamic.mean - simple.mean,
        best_difference: dynamic.best - simple.best,
        simple,
        dynamic,
    })
}
