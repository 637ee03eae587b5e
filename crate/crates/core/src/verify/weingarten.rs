use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ProbeVector;

/// All permutations of `0..t` in lexicographic order (identity first).
pub fn permutations(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..t).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn cycles(p: &[usize]) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
        }
    }
    count
}

/// `π ∘ σ⁻¹`.
fn compose_inverse(pi: &[usize], sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (a, &b) in sigma.iter().enumerate() {
        inv[b] = a;
    }
    inv.iter().map(|&a| pi[a]).collect()
}

#[derive(Debug, Clone)]
pub struct WeingartenTable {
    pub d: usize,
    pub t: usize,
    pub perms: Vec<Vec<usize>>,
    pub gram: DMatrix<f64>,
    pub wg: DMatrix<f64>,
    pub rank: usize,
}

impl WeingartenTable {
    /// `Wg(π)`, the entry paired with the identity.
    pub fn value(&self, pi: &[usize]) -> Option<f64> {
        let k = self.perms.iter().position(|p| p == pi)?;
        Some(self.wg[(0, k)])
    }
}

/// Gram matrix `d^{#cycles(πσ⁻¹)}` over `S_t` and its pseudo-inverse.
pub fn weingarten(d: usize, t: usize) -> Result<WeingartenTable> {
    if t > 5 || d == 0 {
        return Err(Error::OutOfRange(format!("weingarten needs d ≥ 1, t ≤ 5 (got d={d}, t={t})")));
    }
    let perms = permutations(t);
    let k = perms.len();
    let gram = DMatrix::from_fn(k, k, |i, j| (d as f64).powi(cycles(&compose_inverse(&perms[i], &perms[j])) as i32));
    let eig = gram.clone().symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let cutoff = 1e-12 * top.max(1.0);
    let mut wg = DMatrix::zeros(k, k);
    let mut rank = 0;
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= cutoff {
            continue;
        }
        rank += 1;
        let v = eig.eigenvectors.column(idx);
        wg += (v * v.transpose()) / lambda;
    }
    Ok(WeingartenTable { d, t, perms, gram, wg, rank })
}

/// `∫ U^{⊗r} ⊗ Ū^{⊗s} dU` applied to `v`.
///
/// Zero unless `r = s`; otherwise `Σ_{π,σ} Wg(πσ⁻¹) |P_π⟩⟨P_σ| v` where
/// `P_π` has entries `[i_a = j_{π(a)} ∀a]`.
pub fn haar_moment_apply(d: usize, r: usize, s: usize, v: &ProbeVector) -> Result<ProbeVector> {
    if v.n != d {
        return Err(Error::DimensionMismatch { expected: d, found: v.n });
    }
    if v.r != r || v.s != s {
        return Err(Error::Invalid(format!("probe carries (r,s)=({},{}), wanted ({r},{s})", v.r, v.s)));
    }
    let mut out = ProbeVector::zeros(d, r, s);
    if r != s {
        return Ok(out);
    }
    let t = r;
    let table = weingarten(d, t)?;
    let block = d.pow(t as u32);
    let digits = |mut x: usize| {
        let mut ds = vec![0; t];
        for a in (0..t).rev() {
            ds[a] = x % d;
            x /= d;
        }
        ds
    };
    let all: Vec<Vec<usize>> = (0..block).map(digits).collect();
    // row-major flat index of j with j_{π(a)} = i_a
    let partner = |i: &[usize], pi: &[usize]| {
        let mut j = vec![0; t];
        for a in 0..t {
            j[pi[a]] = i[a];
        }
        j.iter().fold(0, |acc, &x| acc * d + x)
    };
    let flat = |i: &[usize]| i.iter().fold(0, |acc, &x| acc * d + x);
    let c: Vec<Complex64> = table
        .perms
        .iter()
        .map(|sigma| all.iter().map(|i| v.data[flat(i) * block + partner(i, sigma)]).sum())
        .collect();
    for (p, pi) in table.perms.iter().enumerate() {
        let b: Complex64 = c.iter().enumerate().map(|(q, cq)| cq * table.wg[(p, q)]).sum();
        if b == Complex64::new(0.0, 0.0) {
            continue;
        }
        for i in &all {
            out.data[flat(i) * block + partner(i, pi)] += b;
        }
    }
    Ok(out)
}
