use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexMatrix, ZERO};
use crate::{Error, Result};

/// A vector in `(Cⁿ)^{⊗(r+s)}`, the carrier of `U^{⊗r} ⊗ Ū^{⊗s}`.
///
/// Entries are stored row-major with the first tensor factor most
/// significant; the first `r` factors are acted on by `U`, the last `s` by
/// its entrywise conjugate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeVector {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub data: Vec<Complex64>,
}

impl ProbeVector {
    pub fn new(n: usize, r: usize, s: usize, data: Vec<Complex64>) -> Result<Self> {
        let len = n.pow((r + s) as u32);
        if data.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: data.len(),
            });
        }
        Ok(Self { n, r, s, data })
    }

    pub fn zeros(n: usize, r: usize, s: usize) -> Self {
        Self {
            n,
            r,
            s,
            data: vec![ZERO; n.pow((r + s) as u32)],
        }
    }

    pub fn modes(&self) -> usize {
        self.r + self.s
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn axpy(&mut self, alpha: Complex64, x: &Self) {
        for (y, x) in self.data.iter_mut().zip(&x.data) {
            *y += alpha * x;
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        for y in &mut self.data {
            *y *= alpha;
        }
    }
}

/// Applies `mat` (or its entrywise conjugate) to tensor factor `mode` of a
/// row-major tensor with `modes` factors of dimension `n`, in place.
pub fn apply_mode(
    data: &mut [Complex64],
    n: usize,
    modes: usize,
    mode: usize,
    mat: &ComplexMatrix,
    conjugate: bool,
) {
    debug_assert!(mode < modes);
    let stride = n.pow((modes - 1 - mode) as u32);
    let outer = n.pow(mode as u32);
    let mut gathered = vec![ZERO; n];
    let entries: Vec<Complex64> = if conjugate {
        mat.iter().map(|z| z.conj()).collect()
    } else {
        mat.iter().copied().collect()
    };
    // nalgebra storage is column-major: entries[i + j*n] = M[i,j]
    for o in 0..outer {
        let base = o * n * stride;
        for inner in 0..stride {
            for (j, g) in gathered.iter_mut().enumerate() {
                *g = data[base + j * stride + inner];
            }
            for i in 0..n {
                let mut acc = ZERO;
                for (j, g) in gathered.iter().enumerate() {
                    acc += entries[i + j * n] * g;
                }
                data[base + i * stride + inner] = acc;
            }
        }
    }
}

/// `(U^{⊗r} ⊗ Ū^{⊗s}) v`, one factor at a time.
///
/// Costs `O((r+s)·n^{r+s+1})`; the `n^{r+s}`-square operator is never
/// formed.
pub fn tensor_moment_apply(u: &ComplexMatrix, r: usize, s: usize, v: &ProbeVector) -> Result<ProbeVector> {
    let n = u.nrows();
    if u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.ncols(),
        });
    }
    if v.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.n,
        });
    }
    if v.r != r || v.s != s {
        return Err(Error::Invalid(format!(
            "probe carries (r,s)=({},{}), operator wants ({r},{s})",
            v.r, v.s
        )));
    }
    let mut out = v.clone();
    let modes = r + s;
    for mode in 0..modes {
        apply_mode(&mut out.data, n, modes, mode, u, mode >= r);
    }
    Ok(out)
}
