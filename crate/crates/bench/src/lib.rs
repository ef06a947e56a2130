//! Fixtures shared by the criterion benchmarks under `benches/`.

use dsta_core::io::{random_instance, InstanceKind};
use dsta_core::problems::{MaxCutInstance, ProblemInstance, TspInstance};
use dsta_core::{Permutation, ValueVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tour(n: usize, seed: u64) -> Permutation {
    Permutation::random(n, &mut rng(seed))
}

pub fn values(n: usize, alphabet: usize, seed: u64) -> ValueVector {
    ValueVector::random(n, alphabet, &mut rng(seed))
}

pub fn euclidean(n: usize, seed: u64) -> TspInstance {
    match random_instance(InstanceKind::EuclideanTsp { n }, seed).expect("valid size") {
        ProblemInstance::Tsp(t) => t,
        _ => unreachable!(),
    }
}

pub fn complete_graph(vertices: usize, seed: u64) -> MaxCutInstance {
    match random_instance(InstanceKind::WeightedGraph { n: vertices, density: 1.0 }, seed).expect("valid size") {
        ProblemInstance::MaxCut(g) => g,
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_seeded() {
        assert_eq!(tour(50, 1), tour(50, 1));
        assert_eq!(values(20, 5, 2), values(20, 5, 2));
        assert_eq!(euclidean(10, 3).dimension(), 10);
        assert_eq!(complete_graph(8, 4).vertex_count(), 8);
    }
}
