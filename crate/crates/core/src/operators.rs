//! Geometric transformation samplers.
//!
//! Each operator draws one random neighbor of a state. The sampling step
//! (`*_sample`) only chooses the move parameters; the move itself is a
//! deterministic `apply_*` function so that tests can force a particular move.
//!
//! Swap, shift and symmetry act on any sequence (permutations and value
//! vectors alike). Substitute only makes sense for value vectors, where it
//! brings a value from outside the sequence into it.

use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Operator identity without its factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Swap,
    Shift,
    Symmetry,
    Substitute,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] =
        [OperatorKind::Swap, OperatorKind::Shift, OperatorKind::Symmetry, OperatorKind::Substitute];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Swap => "swap",
            OperatorKind::Shift => "shift",
            OperatorKind::Symmetry => "symmetry",
            OperatorKind::Substitute => "substitute",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "swap" => Ok(OperatorKind::Swap),
            "shift" => Ok(OperatorKind::Shift),
            "symmetry" => Ok(OperatorKind::Symmetry),
            "substitute" => Ok(OperatorKind::Substitute),
            other => Err(Error::InvalidParams(format!("unknown operator `{other}`"))),
        }
    }
}

/// An operator together with its factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Maximum number of positions exchanged (≥ 2).
    Swap(usize),
    /// Maximum length of the moved segment (≥ 1).
    Shift(usize),
    /// Maximum length of the center left in place between the mirrored halves (≥ 0).
    Symmetry(usize),
    /// Maximum number of positions receiving a new value (≥ 1).
    Substitute(usize),
}

impl Operator {
    pub fn kind(self) -> OperatorKind {
        match self {
            Operator::Swap(_) => OperatorKind::Swap,
            Operator::Shift(_) => OperatorKind::Shift,
            Operator::Symmetry(_) => OperatorKind::Symmetry,
            Operator::Substitute(_) => OperatorKind::Substitute,
        }
    }

    pub fn factor(self) -> usize {
        match self {
            Operator::Swap(m) | Operator::Shift(m) | Operator::Symmetry(m) | Operator::Substitute(m) => m,
        }
    }
}

/// A solution representation the operators can act on.
pub trait Neighborhood: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// Human-readable name used in error messages.
    const REPRESENTATION: &'static str;

    fn supports(kind: OperatorKind) -> bool;

    /// Draws one neighbor of `self` under `op`. The result is feasible and
    /// never equal to `self`.
    fn sample<R: Rng + ?Sized>(&self, op: Operator, rng: &mut R) -> Result<Self>;
}

/// A tour: an ordering of the cities `0..n`.
///
/// Cities are 0-based internally; [`Permutation::one_based`] gives the
/// customary 1-based listing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidParams(format!("{order:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Permutation(order)
    }

    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::InvalidParams("1-based tour contains 0".into()));
        }
        Self::new(order.iter().map(|&c| c - 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&c| c + 1).collect()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl Neighborhood for Permutation {
    const REPRESENTATION: &'static str = "permutation";

    fn supports(kind: OperatorKind) -> bool {
        kind != OperatorKind::Substitute
    }

    fn sample<R: Rng + ?Sized>(&self, op: Operator, rng: &mut R) -> Result<Self> {
        let order = match op {
            Operator::Swap(m) => swap_sample(&self.0, m, rng)?,
            Operator::Shift(m) => shift_sample(&self.0, m, rng)?,
            Operator::Symmetry(m) => symmetry_sample(&self.0, m, rng)?,
            Operator::Substitute(_) => {
                return Err(Error::IncompatibleOperator {
                    operator: OperatorKind::Substitute,
                    representation: Self::REPRESENTATION,
                })
            }
        };
        Ok(Permutation(order))
    }
}

/// A vector of indices into a finite alphabet of `alphabet` values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueVector {
    values: Vec<usize>,
    alphabet: usize,
}

impl ValueVector {
    pub fn new(values: Vec<usize>, alphabet: usize) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::InvalidParams(format!("alphabet size must be at least 2, got {alphabet}")));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= alphabet) {
            return Err(Error::IndexOutOfRange { index: bad, size: alphabet });
        }
        Ok(ValueVector { values, alphabet })
    }

    pub fn random<R: Rng + ?Sized>(len: usize, alphabet: usize, rng: &mut R) -> Self {
        let values = (0..len).map(|_| rng.random_range(0..alphabet)).collect();
        ValueVector { values, alphabet }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.values
    }
}

impl Neighborhood for ValueVector {
    const REPRESENTATION: &'static str = "value vector";

    fn supports(_: OperatorKind) -> bool {
        true
    }

    fn sample<R: Rng + ?Sized>(&self, op: Operator, rng: &mut R) -> Result<Self> {
        let values = match op {
            Operator::Swap(m) => swap_sample(&self.values, m, rng)?,
            Operator::Shift(m) => shift_sample(&self.values, m, rng)?,
            Operator::Symmetry(m) => symmetry_sample(&self.values, m, rng)?,
            Operator::Substitute(m) => substitute_sample(&self.values, self.alphabet, m, rng)?,
        };
        Ok(ValueVector { values, alphabet: self.alphabet })
    }
}

/// Draws `se` independent neighbors of `state`.
pub fn sample_neighborhood<S: Neighborhood, R: Rng + ?Sized>(
    state: &S,
    op: Operator,
    se: usize,
    rng: &mut R,
) -> Result<Vec<S>> {
    (0..se).map(|_| state.sample(op, rng)).collect()
}

fn is_constant<T: PartialEq>(seq: &[T]) -> bool {
    seq.windows(2).all(|w| w[0] == w[1])
}

/// Rearranges the entries at `positions`: position `positions[i]` receives
/// the entry previously at `positions[arrangement[i]]`.
pub fn apply_swap<T: Copy>(seq: &[T], positions: &[usize], arrangement: &[usize]) -> Vec<T> {
    debug_assert_eq!(positions.len(), arrangement.len());
    let mut out = seq.to_vec();
    for (&dst, &src) in positions.iter().zip(arrangement) {
        out[dst] = seq[positions[src]];
    }
    out
}

/// Picks `k ∈ {2..m_a}` random positions and rearranges their entries by a
/// random non-identity permutation.
pub fn swap_sample<T, R>(seq: &[T], m_a: usize, rng: &mut R) -> Result<Vec<T>>
where
    T: Copy + PartialEq,
    R: Rng + ?Sized,
{
    if m_a < 2 {
        return Err(Error::InvalidParams(format!("swap factor must be ≥ 2, got {m_a}")));
    }
    let n = seq.len();
    if n < 2 {
        return Err(Error::DegenerateState { len: n });
    }
    if is_constant(seq) {
        return Err(Error::NoDistinctNeighbor(OperatorKind::Swap));
    }
    let max_k = m_a.min(n);
    loop {
        let k = rng.random_range(2..=max_k);
        let positions = index::sample(rng, n, k).into_vec();
        let arrangement = random_non_identity(k, rng);
        let out = apply_swap(seq, &positions, &arrangement);
        if out != seq {
            return Ok(out);
        }
    }
}

// Uniform over the non-identity permutations of 0..k.
fn random_non_identity<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        perm.shuffle(rng);
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            return perm;
        }
    }
}

/// Removes the segment `[start, start + len)` and reinserts it so that it
/// begins at index `insert_at` of the shortened sequence.
pub fn apply_shift<T: Copy>(seq: &[T], start: usize, len: usize, insert_at: usize) -> Vec<T> {
    let segment = &seq[start..start + len];
    let mut rest: Vec<T> = Vec::with_capacity(seq.len());
    rest.extend_from_slice(&seq[..start]);
    rest.extend_from_slice(&seq[start + len..]);
    let tail = rest.split_off(insert_at);
    rest.extend_from_slice(segment);
    rest.extend(tail);
    rest
}

/// Moves a random segment of length `L ∈ {1..m_b}` to a different random
/// position.
pub fn shift_sample<T, R>(seq: &[T], m_b: usize, rng: &mut R) -> Result<Vec<T>>
where
    T: Copy + PartialEq,
    R: Rng + ?Sized,
{
    if m_b < 1 {
        return Err(Error::InvalidParams("shift factor must be ≥ 1".into()));
    }
    let n = seq.len();
    if n < 2 {
        return Err(Error::DegenerateState { len: n });
    }
    if is_constant(seq) {
        return Err(Error::NoDistinctNeighbor(OperatorKind::Shift));
    }
    let max_len = m_b.min(n - 1);
    loop {
        let len = rng.random_range(1..=max_len);
        let start = rng.random_range(0..=n - len);
        // n - len + 1 slots in the shortened sequence, one of which is the origin.
        let mut insert_at = rng.random_range(0..n - len);
        if insert_at >= start {
            insert_at += 1;
        }
        let out = apply_shift(seq, start, len, insert_at);
        if out != seq {
            return Ok(out);
        }
    }
}

/// Reverses `seq[start..start + len]`.
pub fn reverse_window<T: Copy>(seq: &[T], start: usize, len: usize) -> Vec<T> {
    let mut out = seq.to_vec();
    out[start..start + len].reverse();
    out
}

/// Mirrors the `half` entries before a center of length `center` with the
/// `half` entries after it. `pivot` counts the entries before the center, so
/// the center occupies `[pivot, pivot + center)` (0-based).
///
/// Mirroring the two halves and reversing the center is a reversal of the
/// window `[pivot - half, pivot + center + half)`.
pub fn apply_symmetry<T: Copy>(seq: &[T], pivot: usize, center: usize, half: usize) -> Vec<T> {
    debug_assert!(half >= 1 && half <= pivot && pivot + center + half <= seq.len());
    reverse_window(seq, pivot - half, 2 * half + center)
}

/// Picks a center length `c ∈ {0..m_c}`, a random pivot, and a random
/// half-length that fits, then applies [`apply_symmetry`].
pub fn symmetry_sample<T, R>(seq: &[T], m_c: usize, rng: &mut R) -> Result<Vec<T>>
where
    T: Copy + PartialEq,
    R: Rng + ?Sized,
{
    let n = seq.len();
    if n < 2 {
        return Err(Error::DegenerateState { len: n });
    }
    if is_constant(seq) {
        return Err(Error::NoDistinctNeighbor(OperatorKind::Symmetry));
    }
    let max_center = m_c.min(n - 2);
    loop {
        let center = rng.random_range(0..=max_center);
        let pivot = rng.random_range(1..=n - center - 1);
        let half = rng.random_range(1..=pivot.min(n - pivot - center));
        let out = apply_symmetry(seq, pivot, center, half);
        if out != seq {
            return Ok(out);
        }
    }
}

/// Writes `value` at `position`.
pub fn apply_substitute(values: &[usize], position: usize, value: usize) -> Vec<usize> {
    let mut out = values.to_vec();
    out[position] = value;
    out
}

/// Picks `k ∈ {1..m_d}` distinct positions and gives each a new value drawn
/// uniformly from the alphabet minus its current value.
pub fn substitute_sample<R: Rng + ?Sized>(
    values: &[usize],
    alphabet: usize,
    m_d: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if m_d < 1 {
        return Err(Error::InvalidParams("substitute factor must be ≥ 1".into()));
    }
    if alphabet < 2 {
        return Err(Error::InvalidParams("substitute needs an alphabet of size ≥ 2".into()));
    }
    let n = values.len();
    if n < 1 {
        return Err(Error::DegenerateState { len: n });
    }
    let k = rng.random_range(1..=m_d.min(n));
    let mut out = values.to_vec();
    for pos in index::sample(rng, n, k) {
        let mut v = rng.random_range(0..alphabet - 1);
        if v >= out[pos] {
            v += 1;
        }
        out[pos] = v;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0xD57A)
    }

    fn hamming<T: PartialEq>(a: &[T], b: &[T]) -> usize {
        a.iter().zip(b).filter(|(x, y)| x != y).count()
    }

    #[test]
    fn forced_transposition_on_permutation() {
        // positions {2,4} 1-based
        let out = apply_swap(&[1, 2, 3, 4, 5], &[1, 3], &[1, 0]);
        assert_eq!(out, vec![1, 4, 3, 2, 5]);
    }

    #[test]
    fn forced_transposition_on_values() {
        let out = apply_swap(&[0, 1, 1, 0], &[0, 1], &[1, 0]);
        assert_eq!(out, vec![1, 0, 1, 0]);
    }

    #[test]
    fn shift_position_three_after_five() {
        let out = apply_shift(&[1, 2, 3, 4, 5], 2, 1, 4);
        assert_eq!(out, vec![1, 2, 4, 5, 3]);
    }

    #[test]
    fn shift_single_value_to_end() {
        assert_eq!(apply_shift(&[0, 1, 0], 0, 1, 2), vec![1, 0, 0]);
    }

    #[test]
    fn symmetry_pivot_after_third_component() {
        // empty center after component 3; halves {2,3} and {4,5}
        let out = apply_symmetry(&[1, 2, 3, 4, 5], 3, 0, 2);
        assert_eq!(out, vec![1, 5, 4, 3, 2]);
    }

    #[test]
    fn symmetry_with_center_reverses_whole_window() {
        // halves {1,2} and {5,6} around center {3,4}
        let out = apply_symmetry(&[1, 2, 3, 4, 5, 6, 7], 2, 2, 2);
        assert_eq!(out, vec![6, 5, 4, 3, 2, 1, 7]);
    }

    #[test]
    fn full_reversal_of_values() {
        assert_eq!(reverse_window(&[0, 0, 1, 1], 0, 4), vec![1, 1, 0, 0]);
        assert_eq!(apply_symmetry(&[0, 0, 1, 1], 2, 0, 2), vec![1, 1, 0, 0]);
    }

    #[test]
    fn forced_substitutions() {
        assert_eq!(apply_substitute(&[0, 1, 1, 0, 1], 1, 0), vec![0, 0, 1, 0, 1]);
        assert_eq!(apply_substitute(&[1, 3, 2], 0, 2), vec![2, 3, 2]);
    }

    #[test]
    fn binary_substitute_is_a_flip() {
        let mut rng = rng();
        let base = [0, 1, 1, 0, 1];
        for _ in 0..1000 {
            let out = substitute_sample(&base, 2, 1, &mut rng).unwrap();
            assert_eq!(hamming(&base, &out), 1);
        }
    }

    #[test]
    fn swap_two_on_five_hits_only_transpositions() {
        let mut rng = rng();
        let base = [1, 2, 3, 4, 5];
        let mut seen = HashSet::new();
        for _ in 0..10_000 {
            let out = swap_sample(&base, 2, &mut rng).unwrap();
            assert_eq!(hamming(&base, &out), 2);
            seen.insert(out);
        }
        // C(5,2) transpositions
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn shift_one_on_five_matches_insertion_moves() {
        let base = [1, 2, 3, 4, 5];
        let mut moves = HashSet::new();
        for start in 0..5 {
            for at in 0..5 {
                if at != start {
                    moves.insert(apply_shift(&base, start, 1, at));
                }
            }
        }
        let mut rng = rng();
        let mut seen = HashSet::new();
        for _ in 0..10_000 {
            let out = shift_sample(&base, 1, &mut rng).unwrap();
            assert_ne!(out, base);
            assert!(moves.contains(&out));
            seen.insert(out);
        }
        assert_eq!(seen, moves);
    }

    #[test]
    fn symmetry_outputs_are_single_window_reversals() {
        let base = [1, 2, 3, 4, 5, 6];
        let mut rng = rng();
        for _ in 0..10_000 {
            let out = symmetry_sample(&base, 0, &mut rng).unwrap();
            let first = (0..6).find(|&i| out[i] != base[i]).unwrap();
            let last = (0..6).rev().find(|&i| out[i] != base[i]).unwrap();
            assert_eq!(out, reverse_window(&base, first, last - first + 1));
            // center of length 0 means even window length
            assert_eq!((last - first + 1) % 2, 0);
        }
    }

    #[test]
    fn constant_vectors_have_no_internal_neighbor() {
        let mut rng = rng();
        let flat = [1usize, 1, 1, 1];
        assert!(matches!(swap_sample(&flat, 2, &mut rng), Err(Error::NoDistinctNeighbor(OperatorKind::Swap))));
        assert!(matches!(shift_sample(&flat, 1, &mut rng), Err(Error::NoDistinctNeighbor(_))));
        assert!(matches!(symmetry_sample(&flat, 0, &mut rng), Err(Error::NoDistinctNeighbor(_))));
        assert!(substitute_sample(&flat, 5, 1, &mut rng).is_ok());
    }

    #[test]
    fn too_short_states_are_degenerate() {
        let mut rng = rng();
        assert!(matches!(swap_sample(&[7], 2, &mut rng), Err(Error::DegenerateState { len: 1 })));
        assert!(matches!(shift_sample::<u8, _>(&[], 1, &mut rng), Err(Error::DegenerateState { len: 0 })));
        assert!(matches!(symmetry_sample(&[7], 0, &mut rng), Err(Error::DegenerateState { .. })));
    }

    #[test]
    fn substitute_rejected_on_permutations() {
        let p = Permutation::identity(5);
        let err = p.sample(Operator::Substitute(1), &mut rng()).unwrap_err();
        assert!(matches!(err, Error::IncompatibleOperator { .. }));
    }

    #[test]
    fn neighborhood_of_size_zero_is_empty() {
        let p = Permutation::identity(4);
        assert!(sample_neighborhood(&p, Operator::Swap(2), 0, &mut rng()).unwrap().is_empty());
    }

    #[test]
    fn swap_neighborhood_of_three_cities() {
        let p = Permutation::identity(3);
        let transpositions: HashSet<Vec<usize>> = [vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]].into_iter().collect();
        let out = sample_neighborhood(&p, Operator::Swap(2), 5, &mut rng()).unwrap();
        assert_eq!(out.len(), 5);
        assert!(out.iter().all(|s| transpositions.contains(s.as_slice())));
    }

    #[test]
    fn substitute_neighborhood_covers_all_flips() {
        // 100 draws over 4 equally likely flips: miss probability 4·(3/4)^100 < 1e-12
        let v = ValueVector::new(vec![0, 1, 0, 1], 2).unwrap();
        let out = sample_neighborhood(&v, Operator::Substitute(1), 100, &mut rng()).unwrap();
        let seen: HashSet<_> = out.into_iter().collect();
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 2, 1]).is_ok());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert_eq!(Permutation::from_one_based(&[2, 1, 3]).unwrap().as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn value_vector_validation() {
        assert!(ValueVector::new(vec![0, 4], 5).is_ok());
        assert!(matches!(ValueVector::new(vec![0, 5], 5), Err(Error::IndexOutOfRange { index: 5, size: 5 })));
        assert!(ValueVector::new(vec![0, 0], 1).is_err());
    }

    #[test]
    fn operator_kind_parsing() {
        assert_eq!("Shift".parse::<OperatorKind>().unwrap(), OperatorKind::Shift);
        assert!("twist".parse::<OperatorKind>().is_err());
    }
}
