//! Principal angles between `E = span(e₁,…,e_m)` and `ωE`, and coset
//! representatives realizing prescribed angles.
//!
//! Coordinates are `yᵢ = sin²θᵢ`, so the identity coset sits at `y = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::repindex::Partition;
use crate::zonal::{zonal_eval, zonal_poly};

const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleVector {
    y: Vec<f64>,
}

impl AngleVector {
    /// Sorts ascending and clamps values within `1e-12` of `[0, 1]`.
    pub fn new(mut y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::Invalid("empty angle vector".into()));
        }
        for v in y.iter_mut() {
            if !v.is_finite() || *v < -SLACK || *v > 1.0 + SLACK {
                return Err(Error::OutOfRange(format!("y = {v} outside [0, 1]")));
            }
            *v = v.clamp(0.0, 1.0);
        }
        y.sort_by(|a, b| a.total_cmp(b));
        Ok(Self { y })
    }

    pub fn zeros(m: usize) -> Self {
        Self { y: vec![0.0; m] }
    }

    pub fn m(&self) -> usize {
        self.y.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.y.iter().map(|v| v.sqrt().asin()).collect()
    }
}

fn singular_values(block: ComplexMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = block.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| a.total_cmp(b));
    sv
}

pub fn principal_y(omega: &ComplexMatrix, m: usize) -> Result<AngleVector> {
    let n = omega.nrows();
    if omega.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: omega.ncols() });
    }
    if m == 0 || 2 * m > n {
        return Err(Error::DimensionMismatch { expected: 2 * m.max(1), found: n });
    }
    // cosines from the top-left block, sines from the block below it; each
    // is accurate where the other loses digits
    let cos = singular_values(omega.view((0, 0), (m, m)).into_owned());
    let sin = singular_values(omega.view((m, 0), (n - m, m)).into_owned());
    let sin = &sin[sin.len() - m..];
    let y: Vec<f64> = (0..m)
        .map(|i| {
            let from_sin = sin[i] * sin[i];
            let from_cos = 1.0 - cos[m - 1 - i] * cos[m - 1 - i];
            if from_sin < 0.5 {
                from_sin
            } else {
                from_cos
            }
        })
        .collect();
    AngleVector::new(y)
}

/// `[[C, −S], [S, C]] ⊕ I_{n−2m}` with `C = diag(cos θ)`, `S = diag(sin θ)`.
pub fn coset_point(y: &AngleVector, n: usize) -> Result<ComplexMatrix> {
    let m = y.m();
    if 2 * m > n {
        return Err(Error::DimensionMismatch { expected: 2 * m, found: n });
    }
    let mut out = ComplexMatrix::identity(n, n);
    for (i, &v) in y.values().iter().enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(format!("y = {v} outside [0, 1]")));
        }
        let (c, s) = ((1.0 - v).sqrt(), v.sqrt());
        out[(i, i)] = Complex64::new(c, 0.0);
        out[(m + i, m + i)] = Complex64::new(c, 0.0);
        out[(i, m + i)] = Complex64::new(-s, 0.0);
        out[(m + i, i)] = Complex64::new(s, 0.0);
    }
    Ok(out)
}

pub fn zonal_at_unitary(kappa: &Partition, m: usize, n: usize, omega: &ComplexMatrix) -> Result<f64> {
    if omega.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: omega.nrows() });
    }
    let z = zonal_poly(kappa, m, n)?;
    let y = principal_y(omega, m)?;
    Ok(zonal_eval(&z, y.values()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{block_diag, identity, is_unitary, random::haar_unitary};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_swap() {
        assert_eq!(principal_y(&identity(4), 2).unwrap().values(), &[0.0, 0.0]);
        let swap = ComplexMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        );
        assert!((principal_y(&swap, 1).unwrap().values()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quarter_rotation() {
        let w = coset_point(&AngleVector::new(vec![0.5]).unwrap(), 2).unwrap();
        let c = std::f64::consts::FRAC_PI_4.cos();
        assert!((w[(0, 0)].re - c).abs() < 1e-15 && (w[(1, 0)].re - c).abs() < 1e-15);
        let z = zonal_at_unitary(&Partition::new(vec![1]).unwrap(), 1, 2, &w).unwrap();
        assert!(z.abs() < 1e-15);
        assert_eq!(zonal_at_unitary(&Partition::new(vec![3]).unwrap(), 1, 2, &identity(2)).unwrap(), 1.0);
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n) in [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6)] {
            for _ in 0..50 {
                let y: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
                let y = AngleVector::new(y).unwrap();
                let w = coset_point(&y, n).unwrap();
                assert!(is_unitary(&w, 1e-14));
                let back = principal_y(&w, m).unwrap();
                for (a, b) in back.values().iter().zip(y.values()) {
                    assert!((a - b).abs() < 1e-12, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(AngleVector::new(vec![1.5]), Err(Error::OutOfRange(_))));
        assert!(principal_y(&identity(3), 2).is_err());
    }

    #[test]
    fn bi_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (m, n, kappa) in [(1, 2, vec![2]), (1, 3, vec![3]), (2, 4, vec![2, 1])] {
            let kappa = Partition::new(kappa).unwrap();
            for _ in 0..50 {
                let w = haar_unitary(n, &mut rng);
                let k1 = block_diag(&haar_unitary(m, &mut rng), &haar_unitary(n - m, &mut rng));
                let k2 = block_diag(&haar_unitary(m, &mut rng), &haar_unitary(n - m, &mut rng));
                let a = zonal_at_unitary(&kappa, m, n, &w).unwrap();
                let b = zonal_at_unitary(&kappa, m, n, &(&k1 * &w * &k2)).unwrap();
                assert!((a - b).abs() < 1e-10);
            }
        }
    }
}
