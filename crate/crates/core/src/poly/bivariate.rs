use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, MultiPoly, UniPoly};

/// Polynomial in `(y₁, y₂)` stored as coefficients of `y₂^k`, each a
/// polynomial in `y₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_multi(p: &MultiPoly) -> Self {
        assert_eq!(p.nvars(), 2, "bivariate conversion needs two variables");
        let deg = p.terms().map(|(e, _)| e[1] as usize).max().unwrap_or(0);
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); deg + 1];
        for (e, c) in p.terms() {
            let row = &mut rows[e[1] as usize];
            let i = e[0] as usize;
            if row.len() <= i {
                row.resize(i + 1, BigRational::zero());
            }
            row[i] += c;
        }
        Self::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `y₂`; `None` for zero.
    pub fn degree_y2(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_y1(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn eval_f64(&self, y1: f64, y2: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * y2 + c.eval_f64(y1);
        }
        acc
    }

    /// Coefficients in `y₂` (low to high) after fixing `y₁`.
    pub fn at_y1_f64(&self, y1: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.eval_f64(y1)).collect()
    }

    pub fn at_y1(&self, y1: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(y1)).collect())
    }

    pub fn d_y1(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    pub fn d_y2(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rat(k as i64)))
                .collect(),
        )
    }

    /// Substitutes `y₂ = a + b·y₁`, giving a polynomial in `y₁`.
    pub fn on_line(&self, a: &BigRational, b: &BigRational) -> UniPoly {
        let line = UniPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &line) + c;
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![UniPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    fn scale_uni(&self, s: &UniPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = UniPoly::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![UniPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Monic gcd in `Q[y₁]` of the `y₂`-coefficients.
    pub fn content(&self) -> UniPoly {
        self.coeffs.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|p| p.div_rem(&c).0).collect())
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree_y2().expect("division by zero polynomial");
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree_y2() {
            if dr < dd {
                break;
            }
            let lr = r.leading();
            r = r.scale_uni(&lc).sub(&d.scale_uni(&lr).shift(dr - dd));
        }
        r
    }

    /// Greatest common divisor up to a rational scalar, via the primitive
    /// remainder sequence in `y₂` over `Q[y₁]`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale_uni(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale_uni(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree_y2() < b.degree_y2() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale_uni(&cont)
    }

    /// True if the polynomial has positive degree in some variable.
    pub fn is_nonconstant(&self) -> bool {
        self.degree_y2().unwrap_or(0) > 0 || self.degree_y1() > 0
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree_y2()?;
        let lc = d.leading();
        let mut r = self.clone();
        let mut q = vec![UniPoly::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree_y2() {
            if dr < dd {
                return None;
            }
            let (c, rem) = r.leading().div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&d.scale_uni(&c).shift(dr - dd));
            q[dr - dd] = c;
        }
        Some(Self::new(q))
    }

    /// Resultant with respect to `y₂`, a polynomial in `y₁`. Computed by
    /// evaluating the Sylvester determinant at integer abscissae and
    /// interpolating.
    pub fn resultant_y2(&self, other: &Self) -> UniPoly {
        let (Some(p), Some(q)) = (self.degree_y2(), other.degree_y2()) else {
            return UniPoly::zero();
        };
        if p == 0 && q == 0 {
            return UniPoly::constant(BigRational::one());
        }
        let bound = p * other.degree_y1() + q * self.degree_y1();
        let xs: Vec<BigRational> = (0..=bound as i64).map(rat).collect();
        let ys: Vec<BigRational> = xs
            .iter()
            .map(|x| {
                let a: Vec<BigRational> = self.coeffs.iter().map(|c| c.eval(x)).collect();
                let b: Vec<BigRational> = other.coeffs.iter().map(|c| c.eval(x)).collect();
                sylvester_det(&a, &b)
            })
            .collect();
        interpolate(&xs, &ys)
    }
}

/// Determinant of the Sylvester matrix of two coefficient lists (low to high)
/// of formal degrees `a.len()-1` and `b.len()-1`.
fn sylvester_det(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let (p, q) = (a.len() - 1, b.len() - 1);
    let size = p + q;
    if size == 0 {
        return BigRational::one();
    }
    let mut m = vec![vec![BigRational::zero(); size]; size];
    for row in 0..q {
        for (k, c) in a.iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..p {
        for (k, c) in b.iter().rev().enumerate() {
            m[q + row][row + k] = c.clone();
        }
    }
    det_exact(m)
}

pub(crate) fn det_exact(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Newton interpolation through the given points.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = UniPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        out = &(&out * &factor) + &UniPoly::constant(dd[i].clone());
    }
    out
}
