//! Objective functions, encodings and error metrics.

mod dvs;
mod maxcut;
mod metrics;
mod tsp;

pub use dvs::{dvs_decode, rosenbrock_value, DvsObjective, DvsProblem, ROSENBROCK_ALPHABET};
pub use maxcut::{qubo_value, spin, MaxCutInstance, Qubo};
pub use metrics::{maxcut_error, tsp_error};
pub use tsp::{euclidean_distance, geo_distance, Metric, Rounding, TspInstance};

/// Any of the supported problem families.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Tsp(TspInstance),
    MaxCut(MaxCutInstance),
    Dvs(DvsProblem),
}

impl ProblemInstance {
    pub fn name(&self) -> &str {
        match self {
            ProblemInstance::Tsp(p) => p.name(),
            ProblemInstance::MaxCut(p) => p.name(),
            ProblemInstance::Dvs(p) => p.name(),
        }
    }
}
