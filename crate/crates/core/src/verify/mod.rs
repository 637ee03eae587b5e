//! Design verification against Haar moments.
//!
//! A multiset `X` on `U(n)` matches the Haar `(r,s)` moment iff its frame
//! potential `(1/|X|²) Σ tr(U†V)^r · conj(tr(U†V))^s` equals the Haar value,
//! which is `δ_{rs}` times the commutant dimension of `U^{⊗r}`.

mod moment;
mod sampled;
mod weingarten;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::PAIR_LIMIT;
use crate::designset::UnitaryMultiset;
use crate::error::{Error, Result};
use crate::repindex::haar_moment_constant;

pub use moment::{apply_moment, dense_moment, probe_check, probe_check_all, MomentCache};
pub use sampled::{sampled_check, sampled_check_all, SAMPLED_Z_LIMIT};
pub use weingarten::{haar_moment_apply, permutations, weingarten, WeingartenTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerificationMode {
    ExactEnumerated,
    ProbeFactorized,
    Sampled,
    Character,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    pub value: f64,
    pub target: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub std_error: Option<f64>,
    /// Haar value of the frame potential for this `(r, s)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub haar_constant: Option<f64>,
}

impl ReportEntry {
    /// Residual `|value − target|`.
    pub fn new(label: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        Self::with_residual(label, value, target, (value - target).abs(), tolerance)
    }

    pub fn with_residual(label: impl Into<String>, value: f64, target: f64, residual: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            value,
            target,
            residual,
            tolerance,
            pass: residual <= tolerance,
            std_error: None,
            haar_constant: None,
        }
    }

    pub fn with_haar(mut self, constant: f64) -> Self {
        self.haar_constant = Some(constant);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: VerificationMode,
    pub dim: usize,
    /// Exact cardinality of the verified multiset, as a decimal string.
    pub cardinality: String,
    pub entries: Vec<ReportEntry>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(mode: VerificationMode, dim: usize, cardinality: String, entries: Vec<ReportEntry>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        Self { mode, dim, cardinality, entries, pass, samples: None, probes: None, seed: None }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |a, e| a.max(e.residual))
    }

    /// Appends the entries of another report and recomputes the verdict.
    pub fn merge(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
        self.pass = self.entries.iter().all(|e| e.pass);
    }
}

/// Haar value of the `(r, s)` frame potential on `U(d)`.
pub fn haar_target(d: usize, r: u32, s: u32) -> f64 {
    if r == s {
        haar_moment_constant(d, r) as f64
    } else {
        0.0
    }
}

/// `(value, haar_target)` for one `(r, s)`.
pub fn frame_potential(x: &UnitaryMultiset, r: u32, s: u32) -> Result<(f64, f64)> {
    let table = frame_potential_table(x, r.max(s))?;
    Ok((table[r as usize][s as usize], haar_target(x.dim(), r, s)))
}

fn check_pairs(x: &UnitaryMultiset) -> Result<()> {
    let pairs = (x.distinct() as u128).pow(2);
    if pairs > PAIR_LIMIT as u128 {
        return Err(Error::TooLarge {
            what: "pairwise frame potential",
            size: pairs.to_string(),
            limit: PAIR_LIMIT.to_string(),
        });
    }
    Ok(())
}

/// Frame potentials for every `0 ≤ r, s ≤ t` from one pass over pairs.
pub fn frame_potential_table(x: &UnitaryMultiset, t: u32) -> Result<Vec<Vec<f64>>> {
    check_pairs(x)?;
    let t = t as usize;
    let elems: Vec<(Vec<Complex64>, f64)> = x
        .iter()
        .map(|(u, k)| (u.iter().copied().collect(), k as f64))
        .collect();
    let mut acc = vec![vec![Complex64::new(0.0, 0.0); t + 1]; t + 1];
    let mut pw = vec![Complex64::new(0.0, 0.0); t + 1];
    let mut pwc = vec![Complex64::new(0.0, 0.0); t + 1];
    for (u, ku) in &elems {
        for (v, kv) in &elems {
            // tr(U†V) = Σ conj(U_ij) V_ij
            let z: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
            let w = ku * kv;
            pw[0] = Complex64::new(w, 0.0);
            pwc[0] = Complex64::new(1.0, 0.0);
            for k in 1..=t {
                pw[k] = pw[k - 1] * z;
                pwc[k] = pwc[k - 1] * z.conj();
            }
            for r in 0..=t {
                for s in 0..=t {
                    acc[r][s] += pw[r] * pwc[s];
                }
            }
        }
    }
    let total = x.cardinality() as f64;
    Ok(acc
        .into_iter()
        .map(|row| row.into_iter().map(|z| z.re / (total * total)).collect())
        .collect())
}

/// Exact verification of every `(r, s)` with `r, s ≤ t`.
pub fn verify_exact(x: &UnitaryMultiset, t: u32, tol: f64) -> Result<VerificationReport> {
    let table = frame_potential_table(x, t)?;
    let mut entries = Vec::new();
    for r in 0..=t {
        for s in 0..=t {
            let target = haar_target(x.dim(), r, s);
            let entry = ReportEntry::new(format!("r={r},s={s}"), table[r as usize][s as usize], target, tol);
            entries.push(entry.with_haar(target));
        }
    }
    Ok(VerificationReport::new(
        VerificationMode::ExactEnumerated,
        x.dim(),
        x.cardinality().to_string(),
        entries,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designset::{mset_inverse, mset_translate, roots_of_unity_design, Side};
    use crate::linalg::random::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_set(n: usize, k: usize, seed: u64) -> UnitaryMultiset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        UnitaryMultiset::from_matrices(n, (0..k).map(|_| haar_unitary(n, &mut rng)).collect()).unwrap()
    }

    #[test]
    fn roots_of_unity_are_exact() {
        let x = roots_of_unity_design(4);
        let report = verify_exact(&x, 4, 1e-12).unwrap();
        assert!(report.pass);
        for r in 0..=4 {
            for s in 0..=4 {
                let (v, target) = frame_potential(&x, r, s).unwrap();
                assert_eq!(target, if r == s { 1.0 } else { 0.0 });
                assert!((v - target).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn zeroth_moment_is_one() {
        let x = random_set(3, 7, 1);
        assert!((frame_potential(&x, 0, 0).unwrap().0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn minimum_principle_and_invariance() {
        let x = random_set(2, 9, 2);
        let g = haar_unitary(2, &mut ChaCha8Rng::seed_from_u64(3));
        for t in 1..=3 {
            let (v, target) = frame_potential(&x, t, t).unwrap();
            assert!(v >= target - 1e-9);
            for y in [
                mset_translate(&g, &x, Side::Left).unwrap(),
                mset_translate(&g, &x, Side::Right).unwrap(),
                mset_inverse(&x),
            ] {
                assert!((frame_potential(&y, t, t).unwrap().0 - v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn singleton_fails() {
        let x = UnitaryMultiset::singleton(crate::linalg::identity(2)).unwrap();
        let report = verify_exact(&x, 1, 1e-8).unwrap();
        assert!(!report.pass);
        assert_eq!(report.failures().count(), 3);
    }
}
