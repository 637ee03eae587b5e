use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{frame_potential_table, haar_target, ReportEntry, VerificationMode, VerificationReport};
use crate::designset::DesignRecipe;
use crate::error::Result;

/// Largest accepted `|z|` for a sampled frame-potential estimate.
pub const SAMPLED_Z_LIMIT: f64 = 4.0;

/// Monte Carlo frame potential for one `(r, s)`.
pub fn sampled_check(recipe: &DesignRecipe, r: u32, s: u32, n_samples: u64, seed: u64) -> Result<VerificationReport> {
    run(recipe, &[(r, s)], n_samples, seed)
}

/// Monte Carlo frame potentials for every `0 ≤ r, s ≤ t` from one set of
/// sampled pairs.
///
/// When the recipe has no more than `n_samples` ordered pairs it is
/// expanded and every pair is summed instead, giving the exact value with
/// zero standard error.
pub fn sampled_check_all(recipe: &DesignRecipe, t: u32, n_samples: u64, seed: u64) -> Result<VerificationReport> {
    let pairs: Vec<(u32, u32)> = (0..=t).flat_map(|r| (0..=t).map(move |s| (r, s))).collect();
    run(recipe, &pairs, n_samples, seed)
}

fn z_score(mean: f64, target: f64, se: f64) -> f64 {
    if se > 0.0 {
        (mean - target) / se
    } else if (mean - target).abs() <= 1e-9 {
        0.0
    } else {
        f64::MAX
    }
}

fn run(recipe: &DesignRecipe, pairs: &[(u32, u32)], n_samples: u64, seed: u64) -> Result<VerificationReport> {
    let n = recipe.dim();
    let t = pairs.iter().map(|&(r, s)| r.max(s)).max().unwrap_or(0) as usize;
    let exhaustive = recipe
        .cardinality()
        .to_u64()
        .is_some_and(|c| (c as u128).pow(2) <= n_samples as u128);
    let (means, errors, count) = if exhaustive {
        let table = frame_potential_table(&recipe.to_multiset(false)?, t as u32)?;
        let means = pairs.iter().map(|&(r, s)| table[r as usize][s as usize]).collect();
        (means, vec![0.0; pairs.len()], recipe.cardinality().to_u64().unwrap().pow(2))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sum = vec![0.0; pairs.len()];
        let mut sumsq = vec![0.0; pairs.len()];
        let mut pw = vec![Complex64::new(1.0, 0.0); t + 1];
        let mut pwc = vec![Complex64::new(1.0, 0.0); t + 1];
        for _ in 0..n_samples {
            let u = recipe.sample_one(&mut rng);
            let v = recipe.sample_one(&mut rng);
            let z: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for k in 1..=t {
                pw[k] = pw[k - 1] * z;
                pwc[k] = pwc[k - 1] * z.conj();
            }
            for (i, &(r, s)) in pairs.iter().enumerate() {
                let x = (pw[r as usize] * pwc[s as usize]).re;
                sum[i] += x;
                sumsq[i] += x * x;
            }
        }
        let k = n_samples as f64;
        let means: Vec<f64> = sum.iter().map(|x| x / k).collect();
        let errors = means
            .iter()
            .zip(&sumsq)
            .map(|(m, q)| ((q / k - m * m).max(0.0) * k / (k - 1.0).max(1.0) / k).sqrt())
            .collect();
        (means, errors, n_samples)
    };
    let entries = pairs
        .iter()
        .zip(means.iter().zip(&errors))
        .map(|(&(r, s), (&mean, &se))| {
            let target = haar_target(n, r, s);
            let z = z_score(mean, target, se);
            let mut e = ReportEntry::with_residual(format!("r={r},s={s}"), mean, target, z.abs(), SAMPLED_Z_LIMIT)
                .with_haar(target);
            e.std_error = Some(se);
            e
        })
        .collect();
    let mut report = VerificationReport::new(VerificationMode::Sampled, n, recipe.cardinality().to_string(), entries);
    report.samples = Some(count);
    report.seed = Some(seed);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designset::{roots_of_unity_design, UnitaryMultiset};
    use crate::linalg::identity;
    use crate::linalg::random::haar_unitary;

    #[test]
    fn roots_of_unity_exact() {
        let x = DesignRecipe::explicit(roots_of_unity_design(4), "X1");
        let report = sampled_check_all(&x, 4, 1000, 0).unwrap();
        assert!(report.pass);
        for e in &report.entries {
            assert!((e.value - e.target).abs() < 1e-14);
            assert_eq!(e.std_error, Some(0.0));
        }
    }

    #[test]
    fn haar_sample_within_four_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let set = UnitaryMultiset::from_matrices(2, (0..10_000).map(|_| haar_unitary(2, &mut rng)).collect()).unwrap();
        let x = DesignRecipe::explicit(set, "haar");
        let report = sampled_check(&x, 2, 2, 20_000, 3).unwrap();
        assert!(report.pass, "{:?}", report.entries);
        assert!((report.entries[0].value - 2.0).abs() < 0.2);
    }

    #[test]
    fn identity_fails() {
        let x = DesignRecipe::explicit(UnitaryMultiset::singleton(identity(2)).unwrap(), "I");
        let report = sampled_check(&x, 1, 1, 1, 0).unwrap();
        assert!(!report.pass);
    }
}
