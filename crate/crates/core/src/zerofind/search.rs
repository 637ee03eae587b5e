use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{self, kron, mat_exp, mat_log, unitarity_defect, ComplexMatrix};

const MAX_BISECTIONS: usize = 200;
const PERTURBATION: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct BisectionResult {
    pub point: ComplexMatrix,
    pub value: f64,
    pub iterations: usize,
    /// True if the right endpoint had to be moved off the branch cut.
    pub perturbed: bool,
    /// Largest unitarity defect over all midpoints.
    pub max_defect: f64,
}

/// Fixed generic direction used to move an endpoint off the branch cut.
fn perturbation_direction(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(0.0, (i + 1) as f64 / n as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Bisection along `exp((log L + log R)/2)` for a sign change of `f`.
/// Endpoints are swapped if needed so that `f(L) < 0`. If `R` has an
/// eigenvalue at −1 it is replaced once by `exp(10⁻⁶·A)·R`.
pub fn find_zero_on_group(
    f: &dyn Fn(&ComplexMatrix) -> f64,
    left: &ComplexMatrix,
    right: &ComplexMatrix,
    eps: f64,
    tol: &Tolerances,
) -> Result<BisectionResult> {
    let (mut l, mut r) = (left.clone(), right.clone());
    let (mut fl, mut fr) = (f(&l), f(&r));
    if fl > 0.0 && fr < 0.0 {
        std::mem::swap(&mut l, &mut r);
        std::mem::swap(&mut fl, &mut fr);
    }
    if fl == 0.0 || fr == 0.0 {
        let (point, value) = if fl == 0.0 { (l, fl) } else { (r, fr) };
        return Ok(BisectionResult { point, value, iterations: 0, perturbed: false, max_defect: 0.0 });
    }
    if !(fl < 0.0 && fr > 0.0) {
        return Err(Error::NoSignChange { left: fl, right: fr });
    }
    let mut log_l = mat_log(&l, tol)?;
    let mut perturbed = false;
    let mut log_r = match mat_log(&r, tol) {
        Ok(a) => a,
        Err(Error::BranchCut { .. }) => {
            let nudge = mat_exp(&(perturbation_direction(r.nrows()) * Complex64::new(PERTURBATION, 0.0)))?;
            r = nudge * r;
            perturbed = true;
            let fr = f(&r);
            if fr <= 0.0 {
                return Err(Error::NoSignChange { left: fl, right: fr });
            }
            mat_log(&r, tol)?
        }
        Err(e) => return Err(e),
    };
    let mut point = l.clone();
    let mut value = fl;
    let mut max_defect = 0.0f64;
    let mut iterations = 0;
    while linalg::frobenius_distance(&l, &r) > eps && iterations < MAX_BISECTIONS {
        iterations += 1;
        let mid_log = (&log_l + &log_r) * Complex64::new(0.5, 0.0);
        point = mat_exp(&mid_log)?;
        max_defect = max_defect.max(unitarity_defect(&point));
        value = f(&point);
        if value == 0.0 {
            break;
        }
        if value < 0.0 {
            l = point.clone();
            log_l = mat_log(&l, tol)?;
        } else {
            r = point.clone();
            log_r = mat_log(&r, tol)?;
        }
    }
    Ok(BisectionResult { point, value, iterations, perturbed, max_defect })
}

/// Sixteen angles of the two-qubit parameterization
/// `e^{−iθ₁}(U₂⊗U₂)·U₄·(U₂⊗U₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KakParams {
    pub theta: [f64; 16],
}

impl KakParams {
    pub fn new(theta: [f64; 16]) -> Self {
        Self { theta }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut theta = [0.0; 16];
        for t in theta.iter_mut() {
            *t = rng.random::<f64>() * 2.0 * PI;
        }
        Self { theta }
    }

    /// Angles reduced into `[0, 2π)`.
    pub fn wrapped(&self) -> Self {
        let mut theta = self.theta;
        for t in theta.iter_mut() {
            *t = t.rem_euclid(2.0 * PI);
        }
        Self { theta }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn u2(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let d = |a: f64| ComplexMatrix::from_row_slice(2, 2, &[Complex64::from_polar(1.0, -a), c(0.0, 0.0), c(0.0, 0.0), Complex64::from_polar(1.0, a)]);
    let rot = ComplexMatrix::from_row_slice(2, 2, &[c(beta.cos(), 0.0), c(-beta.sin(), 0.0), c(beta.sin(), 0.0), c(beta.cos(), 0.0)]);
    d(alpha) * rot * d(gamma)
}

fn u4(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let sx = ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let sy = ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let sz = ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let h = kron(&sx, &sx) * c(alpha, 0.0) + kron(&sy, &sy) * c(beta, 0.0) + kron(&sz, &sz) * c(gamma, 0.0);
    mat_exp(&(h * c(0.0, -1.0))).expect("skew-Hermitian exponent")
}

pub fn kak_unitary(p: &KakParams) -> ComplexMatrix {
    let t = &p.theta;
    let outer = kron(&u2(t[1], t[2], t[3]), &u2(t[4], t[5], t[6]));
    let inner = kron(&u2(t[10], t[11], t[12]), &u2(t[13], t[14], t[15]));
    outer * u4(t[7], t[8], t[9]) * inner * Complex64::from_polar(1.0, -t[0])
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub params: KakParams,
    pub residual: f64,
    pub iterations: usize,
    /// Objective value after each accepted move, starting with the initial
    /// value.
    pub accepted: Vec<f64>,
}

/// Random local search: propose `θ + δ·Δθ` and keep it when the objective
/// drops, shrinking `δ` (initially `h`) by the ratio of the new to the old
/// objective. Each coordinate of `Δθ` is uniform on `[−π, π]`; a one-sided
/// `[0, 2π]` step drifts every angle the same way and stalls.
///
/// Returns [`Error::Stalled`] when `max_iters` proposals did not reach `eps`;
/// use [`find_common_zero_random_best`] to get the best point in that case.
pub fn find_common_zero_random(
    objective: &dyn Fn(&ComplexMatrix) -> f64,
    theta0: &KakParams,
    eps: f64,
    h: f64,
    seed: u64,
    max_iters: usize,
) -> Result<SearchResult> {
    let result = find_common_zero_random_best(objective, theta0, eps, h, seed, max_iters);
    if result.residual > eps {
        return Err(Error::Stalled { iterations: result.iterations, residual: result.residual });
    }
    Ok(result)
}

/// Same search, always returning the best point reached.
pub fn find_common_zero_random_best(
    objective: &dyn Fn(&ComplexMatrix) -> f64,
    theta0: &KakParams,
    eps: f64,
    h: f64,
    seed: u64,
    max_iters: usize,
) -> SearchResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut theta = *theta0;
    let mut value = objective(&kak_unitary(&theta));
    let mut delta = h;
    let mut accepted = vec![value];
    let mut iterations = 0;
    while value > eps && iterations < max_iters {
        iterations += 1;
        let mut trial = theta;
        for t in trial.theta.iter_mut() {
            *t += delta * (rng.random::<f64>() - 0.5) * 2.0 * PI;
        }
        let v = objective(&kak_unitary(&trial));
        if v < value {
            delta *= v / value;
            theta = trial;
            value = v;
            accepted.push(v);
        }
    }
    SearchResult { params: theta, residual: value, iterations, accepted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::principal_y;
    use crate::linalg::{identity, is_unitary};
    use crate::repindex::Partition;
    use crate::zonal::{zonal_eval, zonal_poly};

    fn swap() -> ComplexMatrix {
        ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    #[test]
    fn bisection_finds_quarter_turn() {
        let z1 = zonal_poly(&Partition::new(vec![1]).unwrap(), 1, 2).unwrap();
        let f = |u: &ComplexMatrix| -zonal_eval(&z1, principal_y(u, 1).unwrap().values());
        let res = find_zero_on_group(&f, &identity(2), &swap(), 1e-10, &Tolerances::default()).unwrap();
        assert!(res.perturbed);
        assert!(res.iterations <= 40);
        assert!(res.max_defect < 1e-10);
        let y = principal_y(&res.point, 1).unwrap().values()[0];
        assert!((y - 0.5).abs() < 1e-10, "{y}");
    }

    #[test]
    fn bisection_needs_sign_change() {
        let f = |_: &ComplexMatrix| 1.0;
        assert!(matches!(
            find_zero_on_group(&f, &identity(2), &swap(), 1e-10, &Tolerances::default()),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn kak_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert!(is_unitary(&kak_unitary(&KakParams::random(&mut rng)), 1e-12));
        }
    }

    #[test]
    fn zero_objective_returns_start() {
        let start = KakParams::new([0.3; 16]);
        let res = find_common_zero_random(&|_| 0.0, &start, 1e-9, 0.1, 1, 10).unwrap();
        assert_eq!(res.params, start);
        assert_eq!(res.iterations, 0);
    }

    #[test]
    fn accepted_values_decrease() {
        let target = kak_unitary(&KakParams::random(&mut ChaCha8Rng::seed_from_u64(2)));
        let obj = |u: &ComplexMatrix| (u - &target).norm_squared();
        let res = find_common_zero_random_best(&obj, &KakParams::new([1.0; 16]), 1e-3, 0.2, 3, 2000);
        assert!(res.accepted.windows(2).all(|w| w[1] <= w[0]));
    }
}
