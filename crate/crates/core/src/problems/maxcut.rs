//! MAX-CUT and its reduction to a ±1 quadratic program.
//!
//! With the last vertex fixed on the `+1` side, maximizing the cut weight
//! `W(y) = ¼ Σᵢⱼ wᵢⱼ (1 − yᵢyⱼ)` over `y = (x, 1)` is the same as minimizing
//! `P(x) = ½ xᵀQx − xᵀc` with `Qᵢⱼ = wᵢⱼ` and `cᵢ = −wᵢ,ₙ₊₁`. Expanding the
//! sum gives the exact identity `W(x, 1) = ¼ Σᵢⱼ wᵢⱼ − P(x) / 2`.
//!
//! Binary states are value vectors over an alphabet of size 2: index 0 is
//! the spin −1 and index 1 the spin +1.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::Problem;
use crate::error::{Error, Result};
use crate::operators::ValueVector;

#[inline]
pub fn spin(index: usize) -> f64 {
    if index == 0 {
        -1.0
    } else {
        1.0
    }
}

fn square_matrix(rows: &[Vec<f64>], what: &str) -> Result<(usize, Vec<f64>)> {
    let n = rows.len();
    let mut flat = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        flat.extend_from_slice(row);
    }
    for i in 0..n {
        for j in 0..i {
            if flat[i * n + j] != flat[j * n + i] {
                return Err(Error::InvalidParams(format!("{what} not symmetric at ({i}, {j})")));
            }
        }
    }
    if let Some(v) = flat.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParams(format!("{what} has non-finite entry {v}")));
    }
    Ok((n, flat))
}

/// `min ½ xᵀQx − xᵀc` over `x ∈ {−1, 1}ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Qubo {
    n: usize,
    q: Vec<f64>,
    c: Vec<f64>,
}

impl Qubo {
    pub fn new(q: Vec<Vec<f64>>, c: Vec<f64>) -> Result<Self> {
        let (n, q) = square_matrix(&q, "Q")?;
        if c.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.len() });
        }
        Ok(Qubo { n, q, c })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn q(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.n + j]
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// `P(x)` for a vector of spins.
    pub fn value_of_spins(&self, x: &[f64]) -> f64 {
        let n = self.n;
        let mut quad = 0.0;
        for i in 0..n {
            let row = &self.q[i * n..(i + 1) * n];
            let qx: f64 = row.iter().zip(x).map(|(q, xj)| q * xj).sum();
            quad += x[i] * qx;
        }
        let lin: f64 = x.iter().zip(&self.c).map(|(xi, ci)| xi * ci).sum();
        0.5 * quad - lin
    }
}

/// `P(x)` where `x` is a binary value vector read as spins.
pub fn qubo_value(x: &ValueVector, qubo: &Qubo) -> Result<f64> {
    if x.len() != qubo.n {
        return Err(Error::DimensionMismatch { expected: qubo.n, found: x.len() });
    }
    let spins: Vec<f64> = x.as_slice().iter().map(|&v| spin(v)).collect();
    Ok(qubo.value_of_spins(&spins))
}

impl Problem for Qubo {
    type State = ValueVector;

    fn cost(&self, x: &ValueVector) -> f64 {
        let spins: Vec<f64> = x.as_slice().iter().map(|&v| spin(v)).collect();
        self.value_of_spins(&spins)
    }

    fn random_state<R: Rng + ?Sized>(&self, rng: &mut R) -> ValueVector {
        ValueVector::random(self.n, 2, rng)
    }
}

/// A weighted graph on `n + 1` vertices with its last-vertex-fixed QUBO.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxCutInstance {
    name: String,
    vertices: usize,
    weights: Vec<f64>,
    qubo: Qubo,
}

impl MaxCutInstance {
    pub fn new(name: impl Into<String>, weights: Vec<Vec<f64>>) -> Result<Self> {
        let (vertices, w) = square_matrix(&weights, "weight matrix")?;
        if vertices < 2 {
            return Err(Error::InvalidSize(format!("MAX-CUT needs at least 2 vertices, got {vertices}")));
        }
        if (0..vertices).any(|i| w[i * vertices + i] != 0.0) {
            return Err(Error::InvalidParams("weight matrix has a nonzero diagonal".into()));
        }
        let n = vertices - 1;
        let q = (0..n).map(|i| w[i * vertices..i * vertices + n].to_vec()).collect();
        let c = (0..n).map(|i| -w[i * vertices + n]).collect();
        let qubo = Qubo::new(q, c)?;
        Ok(MaxCutInstance { name: name.into(), vertices, weights: w, qubo })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `n + 1`.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.vertices + j]
    }

    pub fn qubo(&self) -> &Qubo {
        &self.qubo
    }

    /// `W(y)` for a full assignment of all `n + 1` vertices.
    pub fn cut_weight(&self, y: &ValueVector) -> Result<f64> {
        if y.len() != self.vertices {
            return Err(Error::DimensionMismatch { expected: self.vertices, found: y.len() });
        }
        let s = y.as_slice();
        let v = self.vertices;
        let mut total = 0.0;
        for i in 0..v {
            for j in 0..v {
                total += self.weights[i * v + j] * (1.0 - spin(s[i]) * spin(s[j]));
            }
        }
        Ok(0.25 * total)
    }

    /// `¼ Σᵢⱼ wᵢⱼ`, the constant in `W(x, 1) = offset − P(x) / 2`.
    pub fn offset(&self) -> f64 {
        0.25 * self.weights.iter().sum::<f64>()
    }

    pub fn cut_from_qubo_value(&self, p: f64) -> f64 {
        self.offset() - 0.5 * p
    }

    /// Appends the fixed `+1` last vertex to a QUBO assignment.
    pub fn extend(&self, x: &ValueVector) -> ValueVector {
        let mut values = x.as_slice().to_vec();
        values.push(1);
        ValueVector::new(values, 2).expect("binary")
    }
}

impl Problem for MaxCutInstance {
    type State = ValueVector;

    fn cost(&self, x: &ValueVector) -> f64 {
        self.qubo.cost(x)
    }

    fn random_state<R: Rng + ?Sized>(&self, rng: &mut R) -> ValueVector {
        self.qubo.random_state(rng)
    }
}
