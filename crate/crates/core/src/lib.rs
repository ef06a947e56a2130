//! Discrete state transition algorithm (STA) for unconstrained integer
//! optimization.
//!
//! The crate provides
//!
//! * four neighborhood operators (swap, shift, symmetry, substitute) over
//!   permutations and value vectors ([`operators`]),
//! * the simple and dynamic iteration schemes ([`engine`]),
//! * TSP, MAX-CUT/QUBO and discrete value selection objectives
//!   ([`problems`]),
//! * TSPLIB loading, random instances, result and trace files ([`io`]),
//! * seeded multi-trial experiments and brute-force oracles ([`bench`]).
//!
//! ```
//! use dsta_core::{engine, problems::DvsProblem, StaParams};
//!
//! let problem = DvsProblem::rosenbrock(5).unwrap();
//! let params = StaParams { max_iters: 10, seed: 1, ..Default::default() };
//! let result = engine::run(&problem, &params).unwrap();
//! assert!(result.best_cost >= 0.0);
//! ```

pub mod bench;
pub mod engine;
mod error;
pub mod io;
pub mod operators;
pub mod problems;

pub use engine::{Mode, Problem, RunResult, StaParams, TracePoint};
pub use error::{Error, Result};
pub use operators::{Neighborhood, Operator, OperatorKind, Permutation, ValueVector};
