//! Discrete value selection: each variable takes one value of a finite real
//! alphabet, and a solution stores only the index of the chosen value.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::Problem;
use crate::error::{Error, Result};
use crate::operators::ValueVector;

/// The value set of the integer Rosenbrock benchmark.
pub const ROSENBROCK_ALPHABET: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

/// Looks up `alphabet[indices[i]]` for every `i`.
pub fn dvs_decode(indices: &[usize], alphabet: &[f64]) -> Result<Vec<f64>> {
    indices
        .iter()
        .map(|&k| alphabet.get(k).copied().ok_or(Error::IndexOutOfRange { index: k, size: alphabet.len() }))
        .collect()
}

fn rosenbrock_unchecked(x: &[f64]) -> f64 {
    x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2)).sum()
}

/// `Σᵢ 100 (xᵢ₊₁ − xᵢ²)² + (xᵢ − 1)²` over integer points in `[-2, 2]`.
pub fn rosenbrock_value(x: &[f64]) -> Result<f64> {
    if let Some(&v) = x.iter().find(|v| !ROSENBROCK_ALPHABET.contains(v)) {
        return Err(Error::DomainViolation { value: v });
    }
    Ok(rosenbrock_unchecked(x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DvsObjective {
    Rosenbrock,
    /// `Σᵢ aᵢ (xᵢ − tᵢ)² + Σᵢ bᵢ xᵢ xᵢ₊₁`.
    CoupledQuadratic {
        scales: Vec<f64>,
        targets: Vec<f64>,
        couplings: Vec<f64>,
    },
}

impl DvsObjective {
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            DvsObjective::Rosenbrock => rosenbrock_unchecked(x),
            DvsObjective::CoupledQuadratic { scales, targets, couplings } => {
                let separable: f64 =
                    x.iter().zip(scales.iter().zip(targets)).map(|(xi, (a, t))| a * (xi - t).powi(2)).sum();
                let coupled: f64 = x.windows(2).zip(couplings).map(|(w, b)| b * w[0] * w[1]).sum();
                separable + coupled
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DvsProblem {
    name: String,
    alphabet: Vec<f64>,
    dimension: usize,
    objective: DvsObjective,
}

impl DvsProblem {
    pub fn new(name: impl Into<String>, alphabet: Vec<f64>, dimension: usize, objective: DvsObjective) -> Result<Self> {
        if alphabet.len() < 2 {
            return Err(Error::InvalidParams("alphabet needs at least 2 values".into()));
        }
        if dimension < 1 {
            return Err(Error::InvalidSize("dimension must be positive".into()));
        }
        if let DvsObjective::CoupledQuadratic { scales, targets, couplings } = &objective {
            if scales.len() != dimension || targets.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: scales.len().min(targets.len()) });
            }
            if couplings.len() + 1 != dimension {
                return Err(Error::DimensionMismatch { expected: dimension - 1, found: couplings.len() });
            }
        }
        Ok(DvsProblem { name: name.into(), alphabet, dimension, objective })
    }

    pub fn rosenbrock(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(format!("Rosenbrock needs n ≥ 2, got {n}")));
        }
        Self::new(format!("rosenbrock{n}"), ROSENBROCK_ALPHABET.to_vec(), n, DvsObjective::Rosenbrock)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[f64] {
        &self.alphabet
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn objective(&self) -> &DvsObjective {
        &self.objective
    }

    pub fn decode(&self, x: &ValueVector) -> Result<Vec<f64>> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: x.len() });
        }
        dvs_decode(x.as_slice(), &self.alphabet)
    }

    pub fn evaluate(&self, x: &ValueVector) -> Result<f64> {
        Ok(self.objective.eval(&self.decode(x)?))
    }
}

impl Problem for DvsProblem {
    type State = ValueVector;

    fn cost(&self, x: &ValueVector) -> f64 {
        let decoded: Vec<f64> = x.as_slice().iter().map(|&k| self.alphabet[k]).collect();
        self.objective.eval(&decoded)
    }

    fn random_state<R: Rng + ?Sized>(&self, rng: &mut R) -> ValueVector {
        ValueVector::random(self.dimension, self.alphabet.len(), rng)
    }
}
