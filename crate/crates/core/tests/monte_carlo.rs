mod common;

use common::p;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unidesign::grassmann::zonal_at_unitary;
use unidesign::linalg::random::haar_unitary;
use unidesign::repindex::haar_moment_constant;

fn mean_and_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn trace_moments_match_commutant_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in 1..=3 {
        let traces: Vec<f64> = (0..100_000)
            .map(|_| haar_unitary(d, &mut rng).trace().norm_sqr())
            .collect();
        for t in 1..=4 {
            let xs: Vec<f64> = traces.iter().map(|x| x.powi(t)).collect();
            let (mean, se) = mean_and_error(&xs);
            let want = haar_moment_constant(d, t as u32) as f64;
            assert!((mean - want).abs() <= 3.0 * se.max(1e-12), "d={d} t={t}: {mean} ± {se} vs {want}");
        }
    }
}

#[test]
fn zonal_functions_average_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: [(usize, usize, &[u32]); 5] = [(1, 2, &[1]), (1, 2, &[3]), (2, 4, &[2]), (2, 4, &[1, 1]), (2, 4, &[2, 2])];
    for (m, n, kappa) in cases {
        let xs: Vec<f64> = (0..20_000)
            .map(|_| zonal_at_unitary(&p(kappa), m, n, &haar_unitary(n, &mut rng)).unwrap())
            .collect();
        let (mean, se) = mean_and_error(&xs);
        assert!(mean.abs() <= 4.0 * se, "kappa={kappa:?} m={m} n={n}: {mean} ± {se}");
    }
}
