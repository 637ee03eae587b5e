//! Zonal spherical polynomials for the Gelfand pair
//! `(U(n), U(m) × U(n−m))`, built in the normalized Schur basis with exact
//! rational coefficients.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, schur_polynomial, MultiPoly};
use crate::repindex::{ssyt_count, Partition};
use crate::symfun::normalized_schur;

/// Symmetric polynomial in `m` variables, stored in the basis `{S*_σ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPoly {
    m: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl SymmetricPoly {
    pub fn new(m: usize, coeffs: BTreeMap<Partition, BigRational>) -> Result<Self> {
        if let Some(bad) = coeffs.keys().find(|s| s.len() > m) {
            return Err(Error::Invalid(format!("partition {bad} has more than {m} parts")));
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self { m, coeffs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, sigma: &Partition) -> BigRational {
        self.coeffs.get(sigma).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    /// Expansion in monomials `y^e`.
    pub fn to_monomial(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.m);
        for (sigma, c) in &self.coeffs {
            let norm = BigRational::from_integer(BigInt::from(ssyt_count(sigma, self.m)));
            out.add_scaled(&schur_polynomial(sigma, self.m), &(c / norm));
        }
        out
    }
}

/// Floating-point evaluation at `y`.
pub fn zonal_eval(z: &SymmetricPoly, y: &[f64]) -> f64 {
    assert_eq!(y.len(), z.m, "expected {} coordinates", z.m);
    z.coeffs
        .iter()
        .map(|(sigma, c)| crate::poly::rat_to_f64(c) * normalized_schur(sigma, y))
        .sum()
}

/// `(a)^{s̄} = a(a+1)⋯(a+s−1)`.
pub fn ascending_factorial(a: &BigRational, s: u32) -> BigRational {
    (0..s).fold(BigRational::one(), |acc, j| acc * (a + rat(j as i64)))
}

/// `[a]^σ = ∏ᵢ (a−i+1)^{s̄ᵢ}`.
pub fn hyper_coeff(a: &BigRational, sigma: &Partition) -> BigRational {
    sigma
        .parts()
        .iter()
        .enumerate()
        .fold(BigRational::one(), |acc, (i, &s)| acc * ascending_factorial(&(a - rat(i as i64)), s))
}

pub fn partition_rho(sigma: &Partition) -> i64 {
    sigma
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &s)| s as i64 * (s as i64 - 2 * (i as i64 + 1) + 1))
        .sum()
}

/// Generalized binomial coefficients `⟨κ;σ⟩` from
/// `S*_κ(y+1) = Σ_σ ⟨κ;σ⟩ S*_σ(y)`.
pub fn hyper_binom(kappa: &Partition, m: usize) -> BTreeMap<Partition, BigRational> {
    assert!(kappa.len() <= m, "{kappa} has more than {m} parts");
    let shifted = schur_polynomial(kappa, m).shift_by_one();
    let schur = shifted
        .to_schur_basis()
        .expect("a shifted Schur polynomial is symmetric");
    let nk = BigRational::from_integer(BigInt::from(ssyt_count(kappa, m)));
    schur
        .into_iter()
        .map(|(sigma, a)| {
            let ns = BigRational::from_integer(BigInt::from(ssyt_count(&sigma, m)));
            (sigma, a * ns / &nk)
        })
        .collect()
}

/// `⟨κ;σ⟩` and `[c]_{(κ,σ)}` for one `κ` and one `c`.
#[derive(Debug, Clone)]
pub struct HyperCoeffTable {
    pub kappa: Partition,
    pub binom: BTreeMap<Partition, BigRational>,
    pub c_table: BTreeMap<Partition, BigRational>,
}

/// Memoizes binomial tables for a fixed number of variables.
#[derive(Debug, Default)]
pub struct ZonalBuilder {
    m: usize,
    binoms: HashMap<Partition, BTreeMap<Partition, BigRational>>,
}

impl ZonalBuilder {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            binoms: HashMap::new(),
        }
    }

    pub fn binom(&mut self, kappa: &Partition) -> &BTreeMap<Partition, BigRational> {
        let m = self.m;
        self.binoms
            .entry(kappa.clone())
            .or_insert_with(|| hyper_binom(kappa, m))
    }

    fn binom_at(&mut self, kappa: &Partition, sigma: &Partition) -> BigRational {
        self.binom(kappa).get(sigma).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Runs the downward recursion for `[c]_{(κ,σ)}` over every `σ ≤ κ`.
    pub fn table(&mut self, kappa: &Partition, c: &BigRational) -> Result<HyperCoeffTable> {
        let binom = self.binom(kappa).clone();
        let k = kappa.weight() as i64;
        let rho_k = partition_rho(kappa);
        let mut sigmas: Vec<&Partition> = binom.keys().collect();
        sigmas.sort_by_key(|s| std::cmp::Reverse(s.weight()));
        let mut c_table: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for sigma in sigmas {
            if sigma == kappa {
                c_table.insert(sigma.clone(), BigRational::one());
                continue;
            }
            let ks = rat(k - sigma.weight() as i64);
            let denom = c + rat(rho_k - partition_rho(sigma)) / &ks;
            if denom.is_zero() {
                return Err(Error::SingularCoefficient {
                    kappa: kappa.parts().to_vec(),
                    sigma: sigma.parts().to_vec(),
                    c: c.to_string(),
                });
            }
            let b_ks = &binom[sigma];
            let mut sum = BigRational::zero();
            for i in 0..self.m {
                let Some(up) = sigma.add_box(i, self.m) else {
                    continue;
                };
                let Some(c_up) = c_table.get(&up).cloned() else {
                    continue;
                };
                let b_up = binom.get(&up).cloned().unwrap_or_else(BigRational::zero);
                if b_up.is_zero() {
                    continue;
                }
                let b_step = self.binom_at(&up, sigma);
                sum += b_up * b_step * c_up;
            }
            c_table.insert(sigma.clone(), sum / (ks * b_ks) / denom);
        }
        Ok(HyperCoeffTable {
            kappa: kappa.clone(),
            binom,
            c_table,
        })
    }

    /// Normalized zonal polynomial `Z_κ` on `U(n)/(U(m)×U(n−m))`.
    pub fn zonal(&mut self, kappa: &Partition, n: usize) -> Result<SymmetricPoly> {
        let m = self.m;
        if kappa.len() > m || 2 * m > n {
            return Err(Error::Invalid(format!(
                "need length({kappa}) <= m <= n/2, got m={m}, n={n}"
            )));
        }
        let table = self.table(kappa, &rat(n as i64))?;
        let mr = rat(m as i64);
        let mut coeffs = BTreeMap::new();
        for (sigma, b) in &table.binom {
            let sign = if sigma.weight() % 2 == 0 { rat(1) } else { rat(-1) };
            let v = sign * b * &table.c_table[sigma] / hyper_coeff(&mr, sigma);
            coeffs.insert(sigma.clone(), v);
        }
        let c0 = coeffs[&Partition::empty()].clone();
        if c0.is_zero() {
            return Err(Error::SingularCoefficient {
                kappa: kappa.parts().to_vec(),
                sigma: Vec::new(),
                c: n.to_string(),
            });
        }
        for v in coeffs.values_mut() {
            *v /= &c0;
        }
        SymmetricPoly::new(m, coeffs)
    }
}

pub fn c_coefficient(
    c: &BigRational,
    kappa: &Partition,
    sigma: &Partition,
    builder: &mut ZonalBuilder,
) -> Result<BigRational> {
    let table = builder.table(kappa, c)?;
    Ok(table.c_table.get(sigma).cloned().unwrap_or_else(BigRational::zero))
}

pub fn zonal_poly(kappa: &Partition, m: usize, n: usize) -> Result<SymmetricPoly> {
    ZonalBuilder::new(m).zonal(kappa, n)
}
