//! Exhaustive reference solvers for small instances. These evaluate
//! objectives with their own loops and share no code with the engine.

use crate::error::{Error, Result};
use crate::operators::{Permutation, ValueVector};
use crate::problems::{DvsProblem, MaxCutInstance, Qubo, TspInstance};

pub const TSP_LIMIT: usize = 10;
pub const QUBO_LIMIT: usize = 20;
pub const DVS_LIMIT: u128 = 1_000_000;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Exact optimum over all `(n − 1)! / 2` distinct tours.
pub fn brute_force_tsp(inst: &TspInstance) -> Result<(f64, Permutation)> {
    let n = inst.dimension();
    if n > TSP_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: TSP_LIMIT as u128 });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = (f64::INFINITY, order.clone());
    // city 0 stays first; the other n - 1 run through all permutations
    extend_tour(inst, &mut order, 1, 0.0, &mut best);
    let (cost, tour) = best;
    Ok((cost, Permutation::new(tour).expect("enumerated a permutation")))
}

fn extend_tour(inst: &TspInstance, order: &mut [usize], depth: usize, partial: f64, best: &mut (f64, Vec<usize>)) {
    let n = order.len();
    if depth == n {
        // each undirected tour appears twice; keep the orientation with order[1] < order[n-1]
        if order[1] < order[n - 1] {
            let cost = partial + inst.distance(order[n - 1], order[0]);
            if cost < best.0 {
                *best = (cost, order.to_vec());
            }
        }
        return;
    }
    for k in depth..n {
        order.swap(depth, k);
        let step = inst.distance(order[depth - 1], order[depth]);
        extend_tour(inst, order, depth + 1, partial + step, best);
        order.swap(depth, k);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuboOptimum {
    pub value: f64,
    /// Every minimizer, in enumeration order.
    pub optimizers: Vec<ValueVector>,
}

fn spins_of(mask: u64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect()
}

fn vector_of(mask: u64, n: usize) -> ValueVector {
    ValueVector::new((0..n).map(|i| (mask >> i & 1) as usize).collect(), 2).expect("binary")
}

/// Exact minimum of `½ xᵀQx − xᵀc` over `{−1, 1}ⁿ`, with all minimizers.
pub fn brute_force_qubo(qubo: &Qubo) -> Result<QuboOptimum> {
    let n = qubo.dimension();
    if n > QUBO_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: QUBO_LIMIT as u128 });
    }
    let values: Vec<f64> = (0..1u64 << n)
        .map(|mask| {
            let x = spins_of(mask, n);
            let mut quad = 0.0;
            for i in 0..n {
                for j in 0..n {
                    quad += x[i] * qubo.q(i, j) * x[j];
                }
            }
            let lin: f64 = (0..n).map(|i| x[i] * qubo.c()[i]).sum();
            0.5 * quad - lin
        })
        .collect();
    let value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let optimizers = (0..1u64 << n).filter(|&m| near(values[m as usize], value)).map(|m| vector_of(m, n)).collect();
    Ok(QuboOptimum { value, optimizers })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxCutOptimum {
    pub cut: f64,
    /// Maximizers restricted to the first `n` vertices (the last is fixed at `+1`).
    pub optimizers: Vec<ValueVector>,
}

/// Exact maximum cut with the last vertex fixed on the `+1` side, computed
/// from the cut-weight definition directly.
pub fn brute_force_maxcut(inst: &MaxCutInstance) -> Result<MaxCutOptimum> {
    let v = inst.vertex_count();
    let n = v - 1;
    if n > QUBO_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: QUBO_LIMIT as u128 });
    }
    let cuts: Vec<f64> = (0..1u64 << n)
        .map(|mask| {
            let side = |i: usize| i == n || mask >> i & 1 == 1;
            let mut cut = 0.0;
            for i in 0..v {
                for j in i + 1..v {
                    if side(i) != side(j) {
                        cut += inst.weight(i, j);
                    }
                }
            }
            cut
        })
        .collect();
    let cut = cuts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let optimizers = (0..1u64 << n).filter(|&m| near(cuts[m as usize], cut)).map(|m| vector_of(m, n)).collect();
    Ok(MaxCutOptimum { cut, optimizers })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DvsOptimum {
    pub value: f64,
    pub argmin: ValueVector,
    pub evaluated: u64,
}

/// Exact minimum over all `mⁿ` index vectors.
pub fn brute_force_dvs(problem: &DvsProblem) -> Result<DvsOptimum> {
    let n = problem.dimension();
    let m = problem.alphabet().len();
    let size = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > DVS_LIMIT {
        return Err(Error::TooLarge { size, limit: DVS_LIMIT });
    }
    let mut idx = vec![0usize; n];
    let mut best = (f64::INFINITY, idx.clone());
    let mut evaluated = 0u64;
    loop {
        let v = problem.evaluate(&ValueVector::new(idx.clone(), m)?)?;
        evaluated += 1;
        if v < best.0 {
            best = (v, idx.clone());
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                let argmin = ValueVector::new(best.1, m)?;
                return Ok(DvsOptimum { value: best.0, argmin, evaluated });
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
