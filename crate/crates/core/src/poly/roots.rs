use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat, UniPoly};

/// An isolating interval `(lo, hi]` holding exactly one root, or the exact
/// root when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }
}

pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut next = p.derivative();
    while !next.is_zero() {
        let r = -&seq.last().unwrap().rem(&next);
        seq.push(next);
        next = r;
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn changes_at(seq: &[UniPoly], x: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| sign(&p.eval(x))))
}

fn changes_at_infinity(seq: &[UniPoly], positive: bool) -> usize {
    sign_changes(seq.iter().map(|p| {
        let s = sign(&p.leading());
        if !positive && p.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots, or of roots in `(a, b]` when an interval
/// is given.
pub fn count_real_roots(p: &UniPoly, interval: Option<(&BigRational, &BigRational)>) -> usize {
    let seq = sturm_sequence(&p.square_free());
    match interval {
        None => changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true),
        Some((a, b)) => changes_at(&seq, a).saturating_sub(changes_at(&seq, b)),
    }
}

/// Isolates every distinct real root of `p` in the closed interval `[a, b]`.
pub fn isolate_real_roots(p: &UniPoly, a: &BigRational, b: &BigRational) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "zero polynomial has no isolated roots");
    let sf = p.square_free();
    let seq = sturm_sequence(&sf);
    let mut out = Vec::new();
    if sf.eval(a).is_zero() {
        out.push(RootInterval { lo: a.clone(), hi: a.clone() });
    }
    let mut stack = vec![(a.clone(), b.clone(), changes_at(&seq, a), changes_at(&seq, b))];
    while let Some((lo, hi, clo, chi)) = stack.pop() {
        let count = clo.saturating_sub(chi);
        if count == 0 {
            continue;
        }
        if count == 1 {
            let mid = (&lo + &hi) / rat(2);
            if sf.eval(&hi).is_zero() {
                out.push(RootInterval { lo: hi.clone(), hi });
            } else if sf.eval(&mid).is_zero() {
                out.push(RootInterval { lo: mid.clone(), hi: mid });
            } else {
                out.push(RootInterval { lo, hi });
            }
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        let cmid = changes_at(&seq, &mid);
        stack.push((mid.clone(), hi, cmid, chi));
        stack.push((lo, mid, clo, cmid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Bisects an isolating interval of the square-free polynomial `p` until its
/// width is at most `width`.
pub fn refine_root(p: &UniPoly, root: &RootInterval, width: &BigRational) -> RootInterval {
    let mut iv = root.clone();
    if iv.is_exact() {
        return iv;
    }
    let mut slo = sign(&p.eval(&iv.lo));
    while iv.width() > *width {
        let mid = iv.midpoint();
        let sm = sign(&p.eval(&mid));
        if sm == 0 {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if slo != 0 && sm == slo {
            iv.lo = mid;
            slo = sm;
        } else {
            iv.hi = mid;
        }
    }
    iv
}

/// Decimal rendering with `digits` significant digits, rounded half away
/// from zero.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    // k with 10^(k-1) <= a < 10^k
    let mut k: i64 = 0;
    let mut probe = BigRational::one();
    while a >= probe {
        probe *= &ten;
        k += 1;
    }
    while a < probe.clone() / &ten {
        probe /= &ten;
        k -= 1;
    }
    let scale = digits as i64 - k;
    let factor = BigRational::from_integer(BigInt::from(10).pow(scale.unsigned_abs() as u32));
    let scaled = if scale >= 0 { &a * &factor } else { &a / &factor };
    let int = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let mut s = int.to_string();
    let mut point = k;
    if s.len() > digits {
        // rounding carried into a new leading digit
        point += 1;
        s.truncate(digits);
    }
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), s)
    } else if point as usize >= s.len() {
        format!("{}{}", s, "0".repeat(point as usize - s.len()))
    } else {
        format!("{}.{}", &s[..point as usize], &s[point as usize..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Real roots of a floating-point polynomial (coefficients low to high) in
/// `[a, b]`. Monotone pieces are found from the roots of the derivative;
/// critical points where the polynomial nearly vanishes are kept as double
/// roots.
pub fn real_roots_f64(coeffs: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|&x| x == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, x)| x * i as f64).collect();
    let mut knots = vec![a];
    knots.extend(real_roots_f64(&deriv, a, b).into_iter().filter(|&x| x > a && x < b));
    knots.push(b);
    let mut out: Vec<f64> = Vec::new();
    let near_zero = |x: f64| horner(&c, x).abs() <= 1e-12 * scale;
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(&c, lo), horner(&c, hi));
        if near_zero(lo) {
            out.push(lo);
        }
        if flo * fhi >= 0.0 {
            continue;
        }
        let slo = flo.signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if horner(&c, mid).signum() == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    if near_zero(b) {
        out.push(b);
    }
    out.sort_by(|x, y| x.total_cmp(y));
    out.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::frac;

    #[test]
    fn sturm_counts_quadratic() {
        // t^2 - 2
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(count_real_roots(&p, None), 2);
        assert_eq!(count_real_roots(&p, Some((&rat(0), &rat(2)))), 1);
        let q = UniPoly::from_i64(&[1, 0, 1]);
        assert_eq!(count_real_roots(&q, None), 0);
    }

    #[test]
    fn isolates_and_refines() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &rat(-2), &rat(2));
        assert_eq!(roots.len(), 2);
        let r = refine_root(&p.square_free(), &roots[1], &frac(1, 1_000_000_000_000));
        let v = crate::poly::rat_to_f64(&r.midpoint());
        assert!((v - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn exact_rational_roots_are_exact() {
        let p = UniPoly::from_i64(&[1, -2]);
        let roots = isolate_real_roots(&p, &rat(0), &rat(1));
        assert_eq!(roots, vec![RootInterval { lo: frac(1, 2), hi: frac(1, 2) }]);
        let endpoint = isolate_real_roots(&UniPoly::from_i64(&[0, 1]), &rat(0), &rat(1));
        assert_eq!(endpoint.len(), 1);
        assert!(endpoint[0].is_exact());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&frac(1, 3), 5), "0.33333");
        assert_eq!(rational_to_decimal(&frac(2, 3), 3), "0.667");
        assert_eq!(rational_to_decimal(&frac(-1, 80), 2), "-0.013");
        assert_eq!(rational_to_decimal(&frac(9999, 1000), 3), "10.0");
        assert_eq!(rational_to_decimal(&rat(1250), 2), "1300");
    }

    #[test]
    fn float_roots_with_double_root() {
        // (x - 0.25)^2 (x - 0.75)
        let c = [-0.046875, 0.4375, -1.25, 1.0];
        let r = real_roots_f64(&c, 0.0, 1.0);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.25).abs() < 1e-9 && (r[1] - 0.75).abs() < 1e-12);
    }
}
