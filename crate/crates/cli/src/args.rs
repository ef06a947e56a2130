use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dsta_core::problems::Rounding;
use dsta_core::{Mode, OperatorKind, StaParams};

#[derive(Debug, Parser)]
#[command(name = "dsta", version, about = "Discrete state transition algorithm for integer optimization")]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance.
    Solve {
        #[command(subcommand)]
        problem: SolveProblem,
    },
    /// Run a suite of instances in one or both modes and print a statistics table.
    Bench {
        #[command(subcommand)]
        suite: BenchSuite,
    },
    /// Exact optimum of a small instance by exhaustive enumeration.
    Oracle {
        #[command(subcommand)]
        problem: OracleProblem,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sta,
    Dsta,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sta => Mode::Simple,
            ModeArg::Dsta => Mode::Dynamic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Real,
    Tsplib,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::Real => Rounding::RealValued,
            RoundingArg::Tsplib => Rounding::TsplibInteger,
        }
    }
}

// Algorithm knobs shared by `solve` and `bench`. Omitted flags take the
// library defaults.
#[derive(Debug, Clone, Args)]
pub struct AlgoArgs {
    /// Samples drawn per operator application (search enforcement).
    #[arg(long)]
    pub se: Option<usize>,
    /// Swap factor.
    #[arg(long)]
    pub ma: Option<usize>,
    /// Shift factor.
    #[arg(long)]
    pub mb: Option<usize>,
    /// Symmetry factor.
    #[arg(long)]
    pub mc: Option<usize>,
    /// Substitute factor.
    #[arg(long)]
    pub md: Option<usize>,
    /// Restore probability.
    #[arg(long)]
    pub p1: Option<f64>,
    /// Risk probability.
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Base seed; trial i runs with a seed derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated operator order, e.g. `swap,shift,symmetry`.
    #[arg(long, value_delimiter = ',')]
    pub operators: Option<Vec<OperatorKind>>,
    /// Results file (JSON lines).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Store wall-clock time in the results file (makes it run-dependent).
    #[arg(long)]
    pub record_time: bool,
}

impl AlgoArgs {
    /// Resolves the flags into parameters. `permutation` drops substitute
    /// from the default operator order.
    pub fn params(&self, permutation: bool) -> StaParams {
        let d = StaParams::default();
        let operators = match &self.operators {
            Some(ops) => ops.clone(),
            None if permutation => d.operators.iter().copied().filter(|&k| k != OperatorKind::Substitute).collect(),
            None => d.operators.clone(),
        };
        StaParams {
            se: self.se.unwrap_or(d.se),
            swap_factor: self.ma.unwrap_or(d.swap_factor),
            shift_factor: self.mb.unwrap_or(d.shift_factor),
            symmetry_factor: self.mc.unwrap_or(d.symmetry_factor),
            substitute_factor: self.md.unwrap_or(d.substitute_factor),
            restore_prob: self.p1.unwrap_or(d.restore_prob),
            risk_prob: self.p2.unwrap_or(d.risk_prob),
            max_iters: self.iters.unwrap_or(d.max_iters),
            mode: d.mode,
            seed: self.seed,
            operators,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TspSource {
    /// TSPLIB file.
    #[arg(long, conflicts_with = "random")]
    pub file: Option<PathBuf>,
    /// Random Euclidean instance with this many cities.
    #[arg(long)]
    pub random: Option<usize>,
    /// Seed of the random instance.
    #[arg(long, default_value_t = 0)]
    pub instance_seed: u64,
    #[arg(long, value_enum, default_value_t = RoundingArg::Real)]
    pub rounding: RoundingArg,
}

#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// TSPLIB file whose distance matrix becomes the edge weights.
    #[arg(long, conflicts_with = "random")]
    pub file: Option<PathBuf>,
    /// Random weighted graph with this many vertices.
    #[arg(long)]
    pub random: Option<usize>,
    /// Edge probability of the random graph.
    #[arg(long, default_value_t = 1.0)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub instance_seed: u64,
    #[arg(long, value_enum, default_value_t = RoundingArg::Real)]
    pub rounding: RoundingArg,
}

#[derive(Debug, Subcommand)]
pub enum SolveProblem {
    /// Symmetric TSP from a TSPLIB file or a random Euclidean instance.
    Tsp {
        #[command(flatten)]
        source: TspSource,
        #[command(flatten)]
        run: SolveArgs,
    },
    /// MAX-CUT through its QUBO form.
    Maxcut {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        run: SolveArgs,
    },
    /// Integer Rosenbrock function over integer points in [-2, 2].
    Rosenbrock {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: SolveArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Dsta)]
    pub mode: ModeArg,
    /// Convergence trace of the best trial (CSV).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub algo: AlgoArgs,
}

#[derive(Debug, Subcommand)]
pub enum BenchSuite {
    /// Integer Rosenbrock over several sizes.
    Rosenbrock {
        /// Comma-separated dimensions; empty for no instances.
        #[arg(long, default_value = "5,10,20,50,100,200")]
        sizes: String,
        /// Iteration budget per size; defaults to the matching entry of 10,20,100,200,500,2000.
        #[arg(long)]
        budgets: Option<String>,
        #[command(flatten)]
        run: BenchArgs,
    },
    /// TSPLIB instances.
    Tsp {
        /// Instance files; repeat the flag for several.
        #[arg(long)]
        file: Vec<PathBuf>,
        /// Reference optimum per file, in the same order.
        #[arg(long)]
        optimum: Vec<f64>,
        #[arg(long, value_enum, default_value_t = RoundingArg::Real)]
        rounding: RoundingArg,
        #[command(flatten)]
        run: BenchArgs,
    },
    /// MAX-CUT on TSPLIB distance matrices.
    Maxcut {
        #[arg(long)]
        file: Vec<PathBuf>,
        /// Reference maximum cut per file, in the same order.
        #[arg(long)]
        optimum: Vec<f64>,
        #[arg(long, value_enum, default_value_t = RoundingArg::Real)]
        rounding: RoundingArg,
        #[command(flatten)]
        run: BenchArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Run only this mode (both when omitted).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Directory for per-trial convergence traces.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub algo: AlgoArgs,
}

#[derive(Debug, Subcommand)]
pub enum OracleProblem {
    /// Shortest tour, up to 10 cities.
    Tsp {
        #[command(flatten)]
        source: TspSource,
    },
    /// `½ xᵀQx − xᵀc` over `{−1, 1}ⁿ`, up to 20 variables.
    Qubo {
        /// Rows separated by `;`, entries by `,`, e.g. `0,4;4,0`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Maximum cut, up to 20 vertices.
    Maxcut {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Integer Rosenbrock minimum, up to 10^6 points (n <= 8).
    Rosenbrock {
        #[arg(long)]
        n: usize,
    },
}
