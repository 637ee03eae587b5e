//! Zeros of zonal polynomials and zero search on the unitary group.
//!
//! For `m = 1` the common zeros come from the gcd of the univariate zonal
//! polynomials. For `m = 2` each `Z_κ` is a polynomial in `(y₁, y₂)`; a
//! common factor shared by all of them is a curve of zeros, and the isolated
//! zeros are found by eliminating one variable with a resultant and pairing
//! the real roots. Because every `Z_κ` is symmetric, both coordinates of an
//! isolated zero are roots of the same eliminant.

mod search;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::designset::UnitaryMultiset;
use crate::error::{Error, Result};
use crate::grassmann::{coset_point, zonal_at_unitary, AngleVector};
use crate::poly::{
    frac, isolate_real_roots, rat, rat_to_f64, rational_to_decimal, refine_root, BiPoly, MultiPoly, RootInterval,
    UniPoly,
};
use crate::repindex::Partition;
use crate::zonal::{zonal_eval, SymmetricPoly, ZonalBuilder};

pub use search::{find_common_zero_random, find_common_zero_random_best, find_zero_on_group, kak_unitary, BisectionResult, KakParams, SearchResult};

/// Significant digits of the decimal coordinates stored in certificates.
pub const CERTIFICATE_DIGITS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroKind {
    CommonZero,
    RealPartZero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub kappa_list: Vec<Partition>,
    pub m: usize,
    pub n: usize,
    /// The zero as an ordered point of `[0,1]^m`.
    pub point: Vec<f64>,
    /// `point` to 30 significant digits.
    pub point_digits: Vec<String>,
    pub residuals: BTreeMap<String, f64>,
    pub kind: ZeroKind,
    pub tolerance: f64,
    /// Integer coefficients (low to high) of the polynomial whose roots give
    /// the coordinates, when there is one.
    pub polynomial: Option<Vec<String>>,
    /// 1-based positions of the coordinates among the roots of
    /// `polynomial` in `[0, 1]`.
    pub root_indices: Option<Vec<usize>>,
    /// Set when the point lies on a curve of common zeros.
    pub on_curve: bool,
}

impl ZeroCertificate {
    pub fn y(&self) -> AngleVector {
        AngleVector::new(self.point.clone()).expect("certified points lie in the unit cube")
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &b| a.max(b))
    }

    /// Recomputes every residual on the group element `ω(y)`.
    pub fn revalidate(&self) -> Result<bool> {
        let omega = coset_point(&self.y(), self.n)?;
        for kappa in &self.kappa_list {
            if zonal_at_unitary(kappa, self.m, self.n, &omega)?.abs() > self.tolerance {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Real roots of `p` in `[a, b]`, isolated exactly and refined by bisection
/// to width `tol`. Repeated roots are reported once.
pub fn real_roots(p: &UniPoly, a: f64, b: f64, tol: f64) -> Vec<f64> {
    let (Some(lo), Some(hi), Some(w)) = (
        BigRational::from_f64(a),
        BigRational::from_f64(b),
        BigRational::from_f64(tol),
    ) else {
        return Vec::new();
    };
    let sf = p.square_free();
    isolate_real_roots(&sf, &lo, &hi)
        .iter()
        .map(|iv| rat_to_f64(&refine_root(&sf, iv, &w).midpoint()))
        .collect()
}

fn certificate_width() -> BigRational {
    let mut w = frac(1, 1);
    for _ in 0..CERTIFICATE_DIGITS + 4 {
        w /= rat(10);
    }
    w
}

fn zonal_family(kappas: &[Partition], m: usize, n: usize) -> Result<Vec<SymmetricPoly>> {
    if kappas.is_empty() {
        return Err(Error::Invalid("no zonal polynomials requested".into()));
    }
    let mut builder = ZonalBuilder::new(m);
    kappas.iter().map(|k| builder.zonal(k, n)).collect()
}

fn residuals(kappas: &[Partition], zs: &[SymmetricPoly], point: &[f64]) -> BTreeMap<String, f64> {
    kappas
        .iter()
        .zip(zs)
        .map(|(k, z)| (k.to_string(), zonal_eval(z, point).abs()))
        .collect()
}

fn integer_coefficients(p: &UniPoly) -> Vec<String> {
    p.primitive_integer().iter().map(|c| c.to_string()).collect()
}

fn univariate(z: &SymmetricPoly) -> UniPoly {
    let mono = z.to_monomial();
    let deg = mono.total_degree() as usize;
    UniPoly::new((0..=deg).map(|j| mono.coeff(&[j as u32])).collect())
}

/// Refined roots of `p` in `[0, 1]`, as exact intervals.
fn unit_roots(p: &UniPoly) -> Vec<RootInterval> {
    let sf = p.square_free();
    let w = certificate_width();
    isolate_real_roots(&sf, &rat(0), &rat(1))
        .iter()
        .map(|iv| refine_root(&sf, iv, &w))
        .collect()
}

fn decimal(iv: &RootInterval) -> String {
    rational_to_decimal(&iv.midpoint(), CERTIFICATE_DIGITS)
}

/// Common zeros in `[0, 1]` of `Z_κ` for `m = 1`.
pub fn common_zero_1d(kappas: &[Partition], n: usize, tol: f64) -> Result<Vec<ZeroCertificate>> {
    let zs = zonal_family(kappas, 1, n)?;
    let g = zs.iter().map(univariate).fold(UniPoly::zero(), |g, p| g.gcd(&p));
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::NoZeroFound(format!("{} have no common root", kappa_names(kappas))));
    }
    let roots = unit_roots(&g);
    let poly = integer_coefficients(&g);
    let mut out = Vec::new();
    for (i, iv) in roots.iter().enumerate() {
        let point = vec![rat_to_f64(&iv.midpoint())];
        let res = residuals(kappas, &zs, &point);
        if res.values().all(|&r| r <= tol) {
            out.push(ZeroCertificate {
                kappa_list: kappas.to_vec(),
                m: 1,
                n,
                point,
                point_digits: vec![decimal(iv)],
                residuals: res,
                kind: ZeroKind::CommonZero,
                tolerance: tol,
                polynomial: Some(poly.clone()),
                root_indices: Some(vec![i + 1]),
                on_curve: false,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NoZeroFound(format!("no certified root for {}", kappa_names(kappas))));
    }
    Ok(out)
}

fn kappa_names(kappas: &[Partition]) -> String {
    kappas.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
}

fn swap_variables(p: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(2);
    for (e, c) in p.terms() {
        out.add_term(vec![e[1], e[0]], c.clone());
    }
    out
}

/// Points sampled along a curve of common zeros: `y₁` runs over the
/// abscissae `k/8` and `y₂` over the roots of the curve equation there.
fn curve_points(curve: &BiPoly) -> Vec<(Vec<RootInterval>, Vec<f64>)> {
    let mut out = Vec::new();
    for k in 1..8 {
        let y1 = frac(k, 8);
        let slice = curve.at_y1(&y1);
        if slice.degree().unwrap_or(0) == 0 {
            continue;
        }
        for iv in unit_roots(&slice) {
            let exact = RootInterval { lo: y1.clone(), hi: y1.clone() };
            out.push((vec![exact, iv.clone()], vec![rat_to_f64(&y1), rat_to_f64(&iv.midpoint())]));
        }
    }
    out
}

/// Common zeros in `[0, 1]²` of `Z_κ` for `m = 2`, as ordered points.
pub fn common_zero_2d(kappas: &[Partition], n: usize, tol: f64) -> Result<Vec<ZeroCertificate>> {
    let zs = zonal_family(kappas, 2, n)?;
    let monos: Vec<MultiPoly> = zs.iter().map(SymmetricPoly::to_monomial).collect();
    let polys: Vec<BiPoly> = monos.iter().map(BiPoly::from_multi).collect();

    let common = polys.iter().skip(1).fold(polys[0].clone(), |g, p| g.gcd(p));
    let mut out = Vec::new();
    let make = |point: Vec<f64>, digits: Vec<String>, poly: Option<Vec<String>>, idx: Option<Vec<usize>>, curve: bool| {
        let res = residuals(kappas, &zs, &point);
        res.values().all(|&r| r <= tol).then(|| ZeroCertificate {
            kappa_list: kappas.to_vec(),
            m: 2,
            n,
            point,
            point_digits: digits,
            residuals: res,
            kind: ZeroKind::CommonZero,
            tolerance: tol,
            polynomial: poly,
            root_indices: idx,
            on_curve: curve,
        })
    };

    let cofactors: Vec<(BiPoly, BiPoly)> = if common.is_nonconstant() {
        for (ivs, point) in curve_points(&common) {
            let digits = ivs.iter().map(decimal).collect();
            out.extend(make(point, digits, None, None, true));
        }
        monos
            .iter()
            .zip(&polys)
            .map(|(m, p)| {
                let q = p.div_exact(&common).expect("gcd divides");
                let qs = BiPoly::from_multi(&swap_variables(m)).div_exact(&swapped_bi(&common)).expect("gcd divides");
                (q, qs)
            })
            .collect()
    } else {
        monos
            .iter()
            .zip(&polys)
            .map(|(m, p)| (p.clone(), BiPoly::from_multi(&swap_variables(m))))
            .collect()
    };

    // eliminate with the first pair whose resultant is not identically zero
    let mut eliminant = None;
    'pairs: for i in 0..cofactors.len() {
        for j in i + 1..cofactors.len() {
            let r1 = cofactors[i].0.resultant_y2(&cofactors[j].0);
            if !r1.is_zero() {
                let r2 = cofactors[i].1.resultant_y2(&cofactors[j].1);
                eliminant = Some((r1, r2));
                break 'pairs;
            }
        }
    }
    if eliminant.is_none() && cofactors.len() == 1 && cofactors[0].0.degree_y2().unwrap_or(0) > 0 {
        // a single polynomial has a curve of zeros, not isolated points
        if !common.is_nonconstant() {
            for (ivs, point) in curve_points(&polys[0]) {
                let digits = ivs.iter().map(decimal).collect();
                out.extend(make(point, digits, None, None, true));
            }
        }
    }
    if let Some((r1, r2)) = eliminant {
        let roots1 = unit_roots(&r1);
        let roots2 = if r2.square_free() == r1.square_free() { roots1.clone() } else { unit_roots(&r2) };
        let same = r2.square_free() == r1.square_free();
        let poly = same.then(|| integer_coefficients(&r1.square_free()));
        for (a, iv1) in roots1.iter().enumerate() {
            for (b, iv2) in roots2.iter().enumerate() {
                let point = vec![rat_to_f64(&iv1.midpoint()), rat_to_f64(&iv2.midpoint())];
                let idx = same.then(|| vec![a + 1, b + 1]);
                out.extend(make(point, vec![decimal(iv1), decimal(iv2)], poly.clone(), idx, false));
            }
        }
    }
    dedupe(&mut out);
    if out.is_empty() {
        return Err(Error::NoZeroFound(format!("no certified common zero of {}", kappa_names(kappas))));
    }
    Ok(out)
}

fn swapped_bi(p: &BiPoly) -> BiPoly {
    let mut m = MultiPoly::zero(2);
    for (k, c) in p.coeffs().iter().enumerate() {
        for (j, v) in c.coeffs().iter().enumerate() {
            m.add_term(vec![k as u32, j as u32], v.clone());
        }
    }
    BiPoly::from_multi(&m)
}

fn dedupe(certs: &mut Vec<ZeroCertificate>) {
    let mut kept: Vec<ZeroCertificate> = Vec::new();
    for c in certs.drain(..) {
        let dup = kept.iter().any(|k| {
            k.point.iter().zip(&c.point).all(|(a, b)| (a - b).abs() <= 1e-12)
        });
        if !dup {
            kept.push(c);
        }
    }
    *certs = kept;
}

/// `{ω(y)}` for a common zero, `{ω(y), ω(y)⁻¹}` for a real-part zero.
pub fn omega_from_certificate(cert: &ZeroCertificate, n: usize) -> Result<UnitaryMultiset> {
    let omega = coset_point(&cert.y(), n)?;
    match cert.kind {
        ZeroKind::CommonZero => UnitaryMultiset::singleton(omega),
        ZeroKind::RealPartZero => {
            let inv = omega.adjoint();
            UnitaryMultiset::from_matrices(n, vec![omega, inv])
        }
    }
}

/// The certificate whose sorted coordinates are closest to `near`.
pub fn nearest<'a>(certs: &'a [ZeroCertificate], near: &[f64]) -> Option<&'a ZeroCertificate> {
    let mut target = near.to_vec();
    target.sort_by(|a, b| a.total_cmp(b));
    certs.iter().min_by(|a, b| {
        let d = |c: &ZeroCertificate| {
            c.y().values().iter().zip(&target).map(|(x, t)| (x - t).powi(2)).sum::<f64>()
        };
        d(a).total_cmp(&d(b))
    })
}

/// Dispatches on `m`.
pub fn common_zeros(kappas: &[Partition], m: usize, n: usize, tol: f64) -> Result<Vec<ZeroCertificate>> {
    match m {
        1 => common_zero_1d(kappas, n, tol),
        2 => common_zero_2d(kappas, n, tol),
        _ => Err(Error::Invalid(format!("common zeros are supported for m = 1, 2, not {m}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    fn p(e: &[u32]) -> Partition {
        Partition::new(e.to_vec()).unwrap()
    }

    #[test]
    fn linear_root() {
        let r = real_roots(&UniPoly::from_i64(&[1, -2]), 0.0, 1.0, 1e-14);
        assert_eq!(r, vec![0.5]);
    }

    #[test]
    fn first_and_third_share_half() {
        let certs = common_zero_1d(&[p(&[1]), p(&[3])], 2, 1e-12).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].point, vec![0.5]);
        assert!(certs[0].point_digits[0].starts_with("0.5000000000"));
        assert!(certs[0].revalidate().unwrap());
    }

    #[test]
    fn no_common_root() {
        assert!(matches!(
            common_zero_1d(&[p(&[1]), p(&[2])], 2, 1e-12),
            Err(Error::NoZeroFound(_))
        ));
    }

    #[test]
    fn omega_shapes() {
        let mut cert = common_zero_1d(&[p(&[1])], 2, 1e-12).unwrap().remove(0);
        let single = omega_from_certificate(&cert, 2).unwrap();
        assert_eq!(single.cardinality(), 1);
        cert.kind = ZeroKind::RealPartZero;
        let pair = omega_from_certificate(&cert, 2).unwrap();
        assert_eq!(pair.cardinality(), 2);
        assert!(max_abs_diff(&pair.elements()[0].0, &pair.elements()[1].0) > 0.1);
        cert.point = vec![0.0];
        cert.kind = ZeroKind::CommonZero;
        let id = omega_from_certificate(&cert, 2).unwrap();
        assert!(max_abs_diff(&id.elements()[0].0, &crate::linalg::identity(2)) < 1e-15);
    }
}
