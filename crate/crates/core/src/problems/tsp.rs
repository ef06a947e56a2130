use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::Problem;
use crate::error::{Error, Result};
use crate::operators::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Euclidean2d,
    /// Great-circle distance on coordinates given as `DDD.MM` degrees and minutes.
    Geo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// No rounding at all.
    #[default]
    #[serde(rename = "real")]
    RealValued,
    /// TSPLIB conventions: nearest integer for EUC_2D, truncation after
    /// adding one for GEO.
    #[serde(rename = "tsplib")]
    TsplibInteger,
}

// TSPLIB's truncated value, needed to reproduce its GEO distances
#[allow(clippy::approx_constant)]
const GEO_PI: f64 = 3.141592;
const EARTH_RADIUS: f64 = 6378.388;

fn geo_radians(x: f64) -> f64 {
    let deg = x.trunc();
    let min = x - deg;
    GEO_PI * (deg + 5.0 * min / 3.0) / 180.0
}

pub fn euclidean_distance(a: (f64, f64), b: (f64, f64), rounding: Rounding) -> f64 {
    let d = (a.0 - b.0).hypot(a.1 - b.1);
    match rounding {
        Rounding::RealValued => d,
        Rounding::TsplibInteger => (d + 0.5).floor(),
    }
}

/// `a` and `b` are (latitude, longitude) pairs in TSPLIB `DDD.MM` notation.
pub fn geo_distance(a: (f64, f64), b: (f64, f64), rounding: Rounding) -> f64 {
    let (lat_a, lon_a) = (geo_radians(a.0), geo_radians(a.1));
    let (lat_b, lon_b) = (geo_radians(b.0), geo_radians(b.1));
    let q1 = (lon_a - lon_b).cos();
    let q2 = (lat_a - lat_b).cos();
    let q3 = (lat_a + lat_b).cos();
    let arc = (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).clamp(-1.0, 1.0).acos();
    match rounding {
        Rounding::RealValued => EARTH_RADIUS * arc,
        Rounding::TsplibInteger => (EARTH_RADIUS * arc + 1.0).trunc(),
    }
}

/// A symmetric TSP instance backed by a full distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspInstance {
    name: String,
    n: usize,
    dist: Vec<f64>,
}

impl TspInstance {
    pub fn from_matrix(name: impl Into<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(Error::InvalidSize(format!("a tour needs at least 3 cities, got {n}")));
        }
        let mut dist = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            dist.extend_from_slice(row);
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::InvalidParams(format!("d[{i}][{i}] is not zero")));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidParams(format!("d[{i}][{j}] = {d} is not a distance")));
                }
                if d != dist[j * n + i] {
                    return Err(Error::InvalidParams(format!("distance matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(TspInstance { name: name.into(), n, dist })
    }

    pub fn from_coords(
        name: impl Into<String>,
        coords: &[(f64, f64)],
        metric: Metric,
        rounding: Rounding,
    ) -> Result<Self> {
        let n = coords.len();
        let distance = match metric {
            Metric::Euclidean2d => euclidean_distance,
            Metric::Geo => geo_distance,
        };
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => 0.0,
                        // computed once per pair so the matrix is exactly symmetric
                        std::cmp::Ordering::Less => distance(coords[i], coords[j], rounding),
                        std::cmp::Ordering::Greater => distance(coords[j], coords[i], rounding),
                    })
                    .collect()
            })
            .collect();
        Self::from_matrix(name, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Closed tour length, including the edge back to the first city.
    pub fn tour_length(&self, tour: &Permutation) -> Result<f64> {
        if tour.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: tour.len() });
        }
        Ok(self.length_unchecked(tour.as_slice()))
    }

    pub(crate) fn length_unchecked(&self, order: &[usize]) -> f64 {
        let closing = self.distance(order[order.len() - 1], order[0]);
        order.windows(2).map(|w| self.distance(w[0], w[1])).sum::<f64>() + closing
    }
}

impl Problem for TspInstance {
    type State = Permutation;

    fn cost(&self, tour: &Permutation) -> f64 {
        self.length_unchecked(tour.as_slice())
    }

    fn random_state<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        Permutation::random(self.n, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> TspInstance {
        TspInstance::from_matrix("tri", vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]]).unwrap()
    }

    #[test]
    fn triangle_has_one_length() {
        let t = triangle();
        for order in [[0, 1, 2], [2, 1, 0], [1, 0, 2]] {
            let p = Permutation::new(order.to_vec()).unwrap();
            assert_eq!(t.tour_length(&p).unwrap(), 6.0);
        }
    }

    #[test]
    fn unit_square_perimeter() {
        let coords = [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)];
        let t = TspInstance::from_coords("sq", &coords, Metric::Euclidean2d, Rounding::RealValued).unwrap();
        assert_eq!(t.tour_length(&Permutation::identity(4)).unwrap(), 4.0);
    }

    #[test]
    fn wrong_tour_length_rejected() {
        assert!(matches!(
            triangle().tour_length(&Permutation::identity(4)),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn malformed_matrices_rejected() {
        assert!(TspInstance::from_matrix("x", vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_err());
        let asym = vec![vec![0.0, 1.0, 2.0], vec![1.5, 0.0, 3.0], vec![2.0, 3.0, 0.0]];
        assert!(TspInstance::from_matrix("x", asym).is_err());
        let diag = vec![vec![1.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]];
        assert!(TspInstance::from_matrix("x", diag).is_err());
    }

    #[test]
    fn euclidean_rounding() {
        assert_eq!(euclidean_distance((0.0, 0.0), (3.0, 4.0), Rounding::RealValued), 5.0);
        assert_eq!(euclidean_distance((0.0, 0.0), (1.0, 1.0), Rounding::TsplibInteger), 1.0);
        assert_eq!(euclidean_distance((0.0, 0.0), (1.5, 1.5), Rounding::TsplibInteger), 2.0);
    }

    #[test]
    fn geo_distance_conventions() {
        // one degree of latitude along a meridian
        let a = (10.0, 20.0);
        let b = (11.0, 20.0);
        let real = geo_distance(a, b, Rounding::RealValued);
        assert!((real - EARTH_RADIUS * GEO_PI / 180.0).abs() < 1e-6);
        assert_eq!(geo_distance(a, b, Rounding::TsplibInteger), (real + 1.0).trunc());
        // 30 minutes is half a degree
        let half = geo_distance((10.0, 20.0), (10.30, 20.0), Rounding::RealValued);
        assert!((half - real / 2.0).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn tour_length_invariant_under_rotation_and_reversal(
            coords in prop::collection::vec((0.0..100.0f64, 0.0..100.0f64), 3..=12),
            shift in 0usize..12,
            seed in any::<u64>(),
        ) {
            use rand::SeedableRng;
            let t = TspInstance::from_coords("p", &coords, Metric::Euclidean2d, Rounding::RealValued).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let tour = Permutation::random(coords.len(), &mut rng);
            let base = t.tour_length(&tour).unwrap();
            let mut rotated = tour.as_slice().to_vec();
            rotated.rotate_left(shift % coords.len());
            let mut reversed = tour.as_slice().to_vec();
            reversed.reverse();
            let tol = 1e-9 * base.max(1.0);
            prop_assert!((t.tour_length(&Permutation::new(rotated).unwrap()).unwrap() - base).abs() < tol);
            prop_assert!((t.tour_length(&Permutation::new(reversed).unwrap()).unwrap() - base).abs() < tol);
        }
    }
}
