use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

use super::rat;
use crate::repindex::Partition;

/// Sparse polynomial over Q in a fixed number of variables. Keys are
/// exponent vectors; BTreeMap order is lexicographic on exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], rat(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coeff(&self, exponent: &[u32]) -> BigRational {
        self.terms.get(exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, c: BigRational) {
        assert_eq!(exponent.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &MultiPoly, s: &BigRational) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        out.add_scaled(self, s);
        out
    }

    /// The lexicographically largest exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Substitutes `y_i → y_i + 1` for every variable.
    pub fn shift_by_one(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            // ∏ (y_i + 1)^{e_i} = Σ_{f ≤ e} ∏ C(e_i, f_i) y^f
            let mut partial: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), BigInt::from(1))];
            for &ei in e {
                let mut next = Vec::with_capacity(partial.len() * (ei as usize + 1));
                for (prefix, w) in &partial {
                    for fi in 0..=ei {
                        let mut p = prefix.clone();
                        p.push(fi);
                        next.push((p, w * binomial(BigInt::from(ei), BigInt::from(fi))));
                    }
                }
                partial = next;
            }
            for (f, w) in partial {
                out.add_term(f, c * BigRational::from_integer(w));
            }
        }
        out
    }

    pub fn eval_f64(&self, y: &[f64]) -> f64 {
        assert_eq!(y.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e.iter().zip(y).map(|(&k, &v)| v.powi(k as i32)).product();
                super::rat_to_f64(c) * mono
            })
            .sum()
    }

    pub fn eval(&self, y: &[BigRational]) -> BigRational {
        assert_eq!(y.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut mono = c.clone();
            for (&k, v) in e.iter().zip(y) {
                for _ in 0..k {
                    mono *= v;
                }
            }
            acc += mono;
        }
        acc
    }

    /// Expands a symmetric polynomial in the Schur basis `{s_σ}`, returning
    /// coefficients keyed by partition. Returns `None` if the polynomial is
    /// not symmetric.
    pub fn to_schur_basis(&self) -> Option<BTreeMap<Partition, BigRational>> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        let mut cache: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        while let Some((e, c)) = rest.leading() {
            let (e, c) = (e.clone(), c.clone());
            let sigma = Partition::new(e.clone())?;
            let s = cache
                .entry(e.clone())
                .or_insert_with(|| schur_polynomial(&sigma, self.nvars))
                .clone();
            rest.add_scaled(&s, &-c.clone());
            if rest.coeff(&e) != BigRational::zero() {
                return None;
            }
            out.insert(sigma, c);
        }
        Some(out)
    }
}

/// Schur polynomial `s_σ(y₁,…,y_m)` with exact coefficients, summed over
/// semistandard tableaux.
pub fn schur_polynomial(sigma: &Partition, m: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(m);
    if sigma.len() > m {
        return out;
    }
    let cells: Vec<(usize, usize)> = sigma
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &row)| (0..row as usize).map(move |j| (i, j)))
        .collect();
    let mut filling: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut counts: BTreeMap<Vec<u32>, i64> = BTreeMap::new();

    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        m: u32,
        filling: &mut BTreeMap<(usize, usize), u32>,
        counts: &mut BTreeMap<Vec<u32>, i64>,
    ) {
        if idx == cells.len() {
            let mut e = vec![0u32; m as usize];
            for v in filling.values() {
                e[*v as usize - 1] += 1;
            }
            *counts.entry(e).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[idx];
        let left = if j > 0 { filling[&(i, j - 1)] } else { 1 };
        let above = if i > 0 { filling[&(i - 1, j)] + 1 } else { 1 };
        for v in left.max(above)..=m {
            filling.insert((i, j), v);
            fill(idx + 1, cells, m, filling, counts);
        }
        filling.remove(&(i, j));
    }

    fill(0, &cells, m as u32, &mut filling, &mut counts);
    for (e, k) in counts {
        out.add_term(e, rat(k));
    }
    out
}
