use std::collections::HashMap;

use num_complex::Complex64;

use crate::linalg::{self, ComplexMatrix};

/// Approximate-equality lookup for matrices. Each matrix is projected onto
/// a fixed pseudo-random direction; candidates come from the neighbouring
/// buckets of that projection and are confirmed in max-norm.
#[derive(Debug, Clone)]
pub struct MatrixIndex {
    tol: f64,
    bucket: f64,
    weights: Vec<f64>,
    buckets: HashMap<i64, Vec<usize>>,
    stored: Vec<ComplexMatrix>,
}

impl MatrixIndex {
    pub fn new(dim: usize, tol: f64) -> Self {
        // deterministic weights in [0.5, 1.5) from a Weyl sequence
        let weights = (0..2 * dim * dim)
            .map(|i| 0.5 + ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
            .collect::<Vec<_>>();
        let spread: f64 = weights.iter().sum();
        Self {
            tol,
            bucket: (1e3 * tol * spread).max(1e-9),
            weights,
            buckets: HashMap::new(),
            stored: Vec::new(),
        }
    }

    fn key(&self, u: &ComplexMatrix) -> f64 {
        u.iter()
            .zip(self.weights.chunks(2))
            .map(|(z, w)| z.re * w[0] + z.im * w[1])
            .sum()
    }

    pub fn len(&self) -> usize {
        self.stored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stored.is_empty()
    }

    /// Stores `u` and returns its slot.
    pub fn insert(&mut self, u: &ComplexMatrix) -> usize {
        let slot = self.stored.len();
        let b = (self.key(u) / self.bucket).floor() as i64;
        self.buckets.entry(b).or_default().push(slot);
        self.stored.push(u.clone());
        slot
    }

    /// Slot of a stored matrix within `tol` of `u`.
    pub fn find(&self, u: &ComplexMatrix) -> Option<usize> {
        let b = (self.key(u) / self.bucket).floor() as i64;
        (b - 1..=b + 1)
            .filter_map(|k| self.buckets.get(&k))
            .flatten()
            .copied()
            .find(|&i| linalg::max_abs_diff(&self.stored[i], u) <= self.tol)
    }
}

/// Removes the global phase: the first entry (column-major) of modulus at
/// least `1/(2√n)` is rotated onto the positive real axis. Every column of a
/// unitary has such an entry.
pub fn phase_canonical(u: &ComplexMatrix) -> ComplexMatrix {
    let threshold = 0.5 / (u.nrows() as f64).sqrt();
    match u.iter().find(|z| z.norm() >= threshold) {
        Some(z) => u * Complex64::from_polar(1.0, -z.arg()),
        None => u.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn finds_near_copies_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut index = MatrixIndex::new(3, 1e-10);
        let us: Vec<_> = (0..200).map(|_| haar_unitary(3, &mut rng)).collect();
        for u in &us {
            index.insert(u);
        }
        for (i, u) in us.iter().enumerate() {
            let mut v = u.clone();
            v[(1, 2)] += Complex64::new(3e-11, -2e-11);
            assert_eq!(index.find(&v), Some(i));
        }
        assert_eq!(index.find(&haar_unitary(3, &mut rng)), None);
    }

    #[test]
    fn canonical_phase_is_shared() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = haar_unitary(4, &mut rng);
        let v = &u * Complex64::from_polar(1.0, 2.1);
        assert!(linalg::max_abs_diff(&phase_canonical(&u), &phase_canonical(&v)) < 1e-14);
    }
}
