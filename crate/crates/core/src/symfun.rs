//! Schur polynomials and irreducible characters of U(n).

use num_complex::Complex64;

use crate::designset::UnitaryMultiset;
use crate::linalg::{self, ComplexMatrix};
use crate::repindex::{ssyt_count, DominantWeight, Partition};
use crate::verify::{ReportEntry, VerificationMode, VerificationReport};
use crate::{Error, Result};

/// Highest total degree handled through Newton–Girard from traces; beyond
/// it characters go through eigenvalues.
pub const NEWTON_GIRARD_MAX_DEGREE: u32 = 10;

/// Default coincidence threshold for switching to Jacobi–Trudi.
pub const CONFLUENT_TOL: f64 = 1e-9;

/// Power sums `p_1, …, p_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSums {
    values: Vec<Complex64>,
}

impl PowerSums {
    pub fn from_variables(x: &[Complex64], k: usize) -> Self {
        let values = (1..=k)
            .map(|j| x.iter().map(|z| z.powu(j as u32)).sum())
            .collect();
        Self { values }
    }

    /// `p_j = tr(g^j)`, which avoids computing eigenvalues.
    pub fn from_matrix(g: &ComplexMatrix, k: usize) -> Self {
        let mut values = Vec::with_capacity(k);
        let mut power = g.clone();
        for j in 1..=k {
            if j > 1 {
                power = &power * g;
            }
            values.push(power.trace());
        }
        Self { values }
    }

    pub fn degree(&self) -> usize {
        self.values.len()
    }

    /// `p_j`, 1-based.
    pub fn get(&self, j: usize) -> Complex64 {
        self.values[j - 1]
    }

    /// Complete homogeneous symmetric polynomials `h_0..=h_k` by Newton's
    /// identities `k h_k = Σ p_i h_{k-i}`.
    pub fn complete_homogeneous(&self) -> Vec<Complex64> {
        let k = self.values.len();
        let mut h = vec![Complex64::new(1.0, 0.0)];
        for d in 1..=k {
            let acc: Complex64 = (1..=d).map(|i| self.get(i) * h[d - i]).sum();
            h.push(acc / d as f64);
        }
        h
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            d = -d;
        }
        d *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
        }
    }
    d
}

/// Jacobi–Trudi determinant `det(h_{σ_i - i + j})` from power sums.
pub fn schur_from_power_sums(sigma: &Partition, ps: &PowerSums) -> Complex64 {
    let l = sigma.len();
    if l == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let need = sigma.part(0) as usize + l - 1;
    assert!(ps.degree() >= need, "not enough power sums for {sigma}");
    let h = ps.complete_homogeneous();
    let h_at = |k: i64| -> Complex64 {
        if k < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            h.get(k as usize).copied().unwrap_or(Complex64::new(0.0, 0.0))
        }
    };
    let m: Vec<Vec<Complex64>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| h_at(sigma.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    det(m)
}

fn min_gap(x: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            gap = gap.min((x[i] - x[j]).norm());
        }
    }
    gap
}

/// Schur polynomial `S_σ(x)` with the default confluence threshold.
pub fn schur_eval(sigma: &Partition, x: &[Complex64]) -> Complex64 {
    schur_eval_with(sigma, x, CONFLUENT_TOL)
}

/// Schur polynomial by the bialternant formula; falls back to Jacobi–Trudi
/// when two variables are closer than `confluent`.
pub fn schur_eval_with(sigma: &Partition, x: &[Complex64], confluent: f64) -> Complex64 {
    let m = x.len();
    if sigma.len() > m {
        return Complex64::new(0.0, 0.0);
    }
    if m <= 1 || sigma.is_empty() {
        return if m == 0 { Complex64::new(1.0, 0.0) } else { x[0].powu(sigma.part(0)) };
    }
    if min_gap(x) < confluent {
        let ps = PowerSums::from_variables(x, sigma.weight() as usize + sigma.len());
        return schur_from_power_sums(sigma, &ps);
    }
    bialternant(sigma, x)
}

pub(crate) fn bialternant(sigma: &Partition, x: &[Complex64]) -> Complex64 {
    let m = x.len();
    let parts = sigma.padded(m);
    let num: Vec<Vec<Complex64>> = (0..m)
        .map(|i| (0..m).map(|j| x[i].powu(parts[j] + (m - 1 - j) as u32)).collect())
        .collect();
    let den: Vec<Vec<Complex64>> = (0..m)
        .map(|i| (0..m).map(|j| x[i].powu((m - 1 - j) as u32)).collect())
        .collect();
    det(num) / det(den)
}

/// `S*_σ(y) = S_σ(y) / S_σ(1,…,1)`.
pub fn normalized_schur(sigma: &Partition, y: &[f64]) -> f64 {
    let m = y.len();
    let norm = ssyt_count(sigma, m);
    if norm == 0 {
        return 0.0;
    }
    let x: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    schur_eval(sigma, &x).re / norm as f64
}

/// Character `χ_μ(g)` of the U(n) irrep with highest weight μ.
///
/// Uses `χ_μ(g) = det(g)^{μ_n} S_{μ - μ_n}(eig g)`. Shifted degrees up to
/// [`NEWTON_GIRARD_MAX_DEGREE`] are evaluated from `tr(g^j)`; larger ones
/// from eigenvalues.
pub fn character(mu: &DominantWeight, g: &ComplexMatrix) -> Result<Complex64> {
    let n = mu.n();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.nrows(),
        });
    }
    let shift = *mu.entries().last().unwrap();
    let shifted = Partition::new(
        mu.entries()
            .iter()
            .map(|&e| (e - shift) as u32)
            .collect::<Vec<_>>(),
    )
    .expect("dominant weight shifts to a partition");
    let degree = shifted.weight();
    let (value, det) = if degree <= NEWTON_GIRARD_MAX_DEGREE {
        let det = if shift == 0 { Complex64::new(1.0, 0.0) } else { g.determinant() };
        let ps = PowerSums::from_matrix(g, degree as usize + shifted.len());
        (schur_from_power_sums(&shifted, &ps), det)
    } else {
        let eig = linalg::unitary_eigenvalues(g);
        let det = eig.iter().product::<Complex64>();
        (schur_eval(&shifted, &eig), det)
    };
    Ok(value * det.powi(shift))
}

/// Dimension of the irrep, `χ_μ(I)`.
pub fn dimension(mu: &DominantWeight) -> u128 {
    let shift = *mu.entries().last().unwrap();
    let shifted = Partition::new(
        mu.entries()
            .iter()
            .map(|&e| (e - shift) as u32)
            .collect::<Vec<_>>(),
    )
    .unwrap();
    ssyt_count(&shifted, mu.n())
}

/// Character test for a finite subgroup Γ: reports `|⟨χ_μ|_Γ, 1⟩|` for each
/// nontrivial μ and passes iff all are within `tol`.
///
/// For a finite group the average of `ρ_μ` is the projector onto the fixed
/// vectors, whose trace is this inner product; it vanishes exactly when Γ is
/// a `ρ_μ`-design.
pub fn group_character_test(
    gamma: &UnitaryMultiset,
    weights: &[DominantWeight],
    tol: f64,
) -> Result<VerificationReport> {
    gamma.check_group(1e-8)?;
    let total = gamma.cardinality() as f64;
    let mut entries = Vec::new();
    for mu in weights.iter().filter(|w| !w.is_trivial()) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, mult) in gamma.iter() {
            acc += character(mu, g)? * mult as f64;
        }
        let value = (acc / total).norm();
        entries.push(ReportEntry::new(format!("mu={mu}"), value, 0.0, tol));
    }
    Ok(VerificationReport::new(
        VerificationMode::Character,
        gamma.dim(),
        gamma.cardinality().to_string(),
        entries,
    ))
}
