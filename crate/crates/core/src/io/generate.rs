use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problems::{DvsObjective, DvsProblem, MaxCutInstance, Metric, ProblemInstance, Rounding, TspInstance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InstanceKind {
    /// `n` cities uniform on the unit square, real-valued distances.
    EuclideanTsp { n: usize },
    /// `n` vertices; each edge present with probability `density`, weight uniform on `[0, 1)`.
    WeightedGraph { n: usize, density: f64 },
    /// `n` variables over `m` distinct values with a seeded coupled quadratic objective.
    Dvs { n: usize, m: usize },
}

/// Builds a reproducible random instance.
#[allow(clippy::needless_range_loop)]
pub fn random_instance(kind: InstanceKind, seed: u64) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        InstanceKind::EuclideanTsp { n } => {
            if n < 3 {
                return Err(Error::InvalidSize(format!("TSP needs n ≥ 3, got {n}")));
            }
            let coords: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
            let inst = TspInstance::from_coords(
                format!("euclid{n}-s{seed}"),
                &coords,
                Metric::Euclidean2d,
                Rounding::RealValued,
            )?;
            Ok(ProblemInstance::Tsp(inst))
        }
        InstanceKind::WeightedGraph { n, density } => {
            if n < 2 {
                return Err(Error::InvalidSize(format!("graph needs n ≥ 2 vertices, got {n}")));
            }
            if !(0.0..=1.0).contains(&density) {
                return Err(Error::InvalidSize(format!("density {density} outside [0, 1]")));
            }
            let mut w = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < density {
                        let weight: f64 = rng.random();
                        w[i][j] = weight;
                        w[j][i] = weight;
                    }
                }
            }
            Ok(ProblemInstance::MaxCut(MaxCutInstance::new(format!("graph{n}-s{seed}"), w)?))
        }
        InstanceKind::Dvs { n, m } => {
            if n < 1 || m < 2 {
                return Err(Error::InvalidSize(format!("DVS needs n ≥ 1 and m ≥ 2, got n={n}, m={m}")));
            }
            let mut alphabet: Vec<f64> = Vec::with_capacity(m);
            while alphabet.len() < m {
                let v = rng.random_range(-2.0..2.0);
                if !alphabet.contains(&v) {
                    alphabet.push(v);
                }
            }
            alphabet.sort_by(f64::total_cmp);
            let scales = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
            let targets = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let couplings = (1..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let objective = DvsObjective::CoupledQuadratic { scales, targets, couplings };
            Ok(ProblemInstance::Dvs(DvsProblem::new(format!("dvs{n}x{m}-s{seed}"), alphabet, n, objective)?))
        }
    }
}

/// Reuses a TSP distance matrix as MAX-CUT edge weights, fixing the last city.
pub fn maxcut_from_tsp(inst: &TspInstance) -> Result<MaxCutInstance> {
    MaxCutInstance::new(inst.name(), inst.matrix())
}
