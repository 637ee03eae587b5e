//! Closed forms and fixture polynomials shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use unidesign::poly::UniPoly;
use unidesign::repindex::Partition;

pub fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `Π num / Π den` over integer factors.
fn ratio(num: &[i64], den: &[i64]) -> BigRational {
    let a = num.iter().fold(q(1), |acc, &x| acc * q(x));
    let b = den.iter().fold(q(1), |acc, &x| acc * q(x));
    a / b
}

pub type Terms = Vec<(Vec<u32>, BigRational)>;

/// Printed closed forms of `Z_κ` in the normalized Schur basis, keyed by
/// `κ`. The `(2,2)` entry carries the printed `S₁₁` coefficient
/// `3(n−1)/((m−1)m)`; `corrected_z22_s11` gives the value the recursion
/// yields. Only the `κ` with at most `m` parts are returned.
pub fn printed_forms(m: i64, n: i64) -> Vec<(Vec<u32>, Terms)> {
    type Lazy = Box<dyn Fn() -> Terms>;
    let forms: Vec<(Vec<u32>, Lazy)> = vec![
        (vec![1], Box::new(move || vec![(vec![], q(1)), (vec![1], -ratio(&[n], &[m]))])),
        (
            vec![3],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[3, n + 2], &[m])),
                (vec![2], ratio(&[3, n + 2, n + 3], &[m, m + 1])),
                (vec![3], -ratio(&[n + 2, n + 3, n + 4], &[m, m + 1, m + 2])),
            ]),
        ),
        (
            vec![4],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[4, n + 3], &[m])),
                (vec![2], ratio(&[6, n + 3, n + 4], &[m, m + 1])),
                (vec![3], -ratio(&[4, n + 3, n + 4, n + 5], &[m, m + 1, m + 2])),
                (vec![4], ratio(&[n + 3, n + 4, n + 5, n + 6], &[m, m + 1, m + 2, m + 3])),
            ]),
        ),
        (
            vec![1, 1],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[2, n - 1], &[m])),
                (vec![1, 1], ratio(&[n - 2, n - 1], &[m - 1, m])),
            ]),
        ),
        (
            vec![2, 1],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[3, n], &[m])),
                (vec![1, 1], ratio(&[3, n - 2, n], &[2, m - 1, m])),
                (vec![2], ratio(&[3, n, n + 2], &[2, m, m + 1])),
                (vec![2, 1], -ratio(&[n - 2, n, n + 2], &[m - 1, m, m + 1])),
            ]),
        ),
        (
            vec![3, 1],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[4, n + 1], &[m])),
                (vec![1, 1], ratio(&[2, n - 2, n + 1], &[m - 1, m])),
                (vec![2], ratio(&[4, n + 1, n + 3], &[m, m + 1])),
                (vec![2, 1], -ratio(&[8, n - 2, n + 1, n + 3], &[3, m - 1, m, m + 1])),
                (vec![3], -ratio(&[4, n + 1, n + 3, n + 4], &[3, m, m + 1, m + 2])),
                (vec![3, 1], ratio(&[n - 2, n + 1, n + 3, n + 4], &[m - 1, m, m + 1, m + 2])),
            ]),
        ),
        (
            vec![2, 2],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[4, n], &[m])),
                (vec![1, 1], ratio(&[3, n - 1], &[m - 1, m])),
                (vec![2], ratio(&[3, n, n + 1], &[m, m + 1])),
                (vec![2, 1], -ratio(&[4, n - 1, n, n + 1], &[m - 1, m, m + 1])),
                (vec![2, 2], ratio(&[n - 1, n, n, n + 1], &[m - 1, m, m, m + 1])),
            ]),
        ),
        (
            vec![1, 1, 1, 1],
            Box::new(move || vec![
                (vec![], q(1)),
                (vec![1], -ratio(&[4, n - 3], &[m])),
                (vec![1, 1], ratio(&[6, n - 4, n - 3], &[m - 1, m])),
                (vec![1, 1, 1], -ratio(&[4, n - 5, n - 4, n - 3], &[m - 2, m - 1, m])),
                (vec![1, 1, 1, 1], ratio(&[n - 6, n - 5, n - 4, n - 3], &[m - 3, m - 2, m - 1, m])),
            ]),
        ),
    ];
    forms
        .into_iter()
        .filter(|(k, _)| k.len() as i64 <= m)
        .map(|(k, f)| (k, f()))
        .collect()
}

/// `S₁₁` coefficient of `Z₂₂` as produced by the recursion.
pub fn corrected_z22_s11(m: i64, n: i64) -> BigRational {
    ratio(&[3, n - 1, n], &[m - 1, m])
}

/// `Z₂ = 1 − 2(n+1)/m S₁ + (n+1)(n+2)/(m(m+1)) S₂`.
pub fn corrected_z2(m: i64, n: i64) -> Terms {
    vec![
        (vec![], q(1)),
        (vec![1], -ratio(&[2, n + 1], &[m])),
        (vec![2], ratio(&[n + 1, n + 2], &[m, m + 1])),
    ]
}

/// Coefficients of `P_k(1 − 2y)` in `y`, low to high.
pub fn shifted_legendre(k: usize) -> Vec<BigRational> {
    // P_k(1-2y) = Σ_j (-1)^j C(k,j) C(k+j,j) y^j
    (0..=k)
        .map(|j| {
            let c = num_integer::binomial(k as i64, j as i64) * num_integer::binomial((k + j) as i64, j as i64);
            q(if j % 2 == 0 { c } else { -c })
        })
        .collect()
}

pub fn eliminant_z2_z11() -> UniPoly {
    UniPoly::from_i64(&[1, -24, 114, -180, 90])
}

pub fn legendre_quartic() -> UniPoly {
    UniPoly::from_i64(&[1, -20, 90, -140, 70])
}

pub fn eliminant_z4_z22() -> UniPoly {
    let high_to_low: [i64; 17] = [
        11430720000,
        -91445760000,
        332951472000,
        -730359504000,
        1076946091200,
        -1127785075200,
        863978226720,
        -491476389600,
        208573299152,
        -65783614208,
        15232863368,
        -2533271096,
        292023188,
        -22052192,
        993302,
        -22634,
        197,
    ];
    let mut c = high_to_low.to_vec();
    c.reverse();
    UniPoly::from_i64(&c)
}

/// `½(1 ± √((a ± b√c)/d))` in increasing order.
pub fn nested_roots(a: f64, b: f64, c: f64, d: f64) -> [f64; 4] {
    let inner = |s: f64| ((a + s * b * c.sqrt()) / d).sqrt();
    [
        0.5 * (1.0 - inner(1.0)),
        0.5 * (1.0 - inner(-1.0)),
        0.5 * (1.0 + inner(-1.0)),
        0.5 * (1.0 + inner(1.0)),
    ]
}

fn r(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign changes of `p` on a uniform grid of `[0, 1]`, each narrowed by
/// exact bisection.
pub fn grid_roots(p: &UniPoly, steps: i64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = p.eval(&r(0, 1));
    for i in 1..=steps {
        let x = r(i, steps);
        let cur = p.eval(&x);
        if prev.is_zero() {
            out.push((i - 1) as f64 / steps as f64);
        } else if (prev.is_negative() && cur.is_positive()) || (prev.is_positive() && cur.is_negative()) {
            let (mut lo, mut hi) = (r(i - 1, steps), x.clone());
            let s_lo = prev.is_negative();
            for _ in 0..40 {
                let mid = (&lo + &hi) / r(2, 1);
                if p.eval(&mid).is_negative() == s_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(unidesign::poly::rat_to_f64(&((lo + hi) / r(2, 1))));
        }
        prev = cur;
    }
    out
}
