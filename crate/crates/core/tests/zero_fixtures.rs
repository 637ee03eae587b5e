mod common;

use common::*;
use num_rational::BigRational;
use unidesign::poly::{count_real_roots, UniPoly};
use unidesign::zerofind::{common_zero_2d, real_roots, ZeroKind};

#[test]
fn quartic_roots_match_radicals() {
    let got = real_roots(&eliminant_z2_z11(), 0.0, 1.0, 1e-14);
    let want = nested_roots(7.0, 2.0, 6.0, 15.0);
    assert_eq!(got.len(), 4);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-10, "{g} vs {w}");
    }
    let got = real_roots(&legendre_quartic(), 0.0, 1.0, 1e-14);
    let want = nested_roots(15.0, 2.0, 30.0, 35.0);
    assert_eq!(got.len(), 4);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-10, "{g} vs {w}");
    }
}

#[test]
fn degree_sixteen_eliminant_has_sixteen_roots() {
    let p = eliminant_z4_z22();
    assert_eq!(count_real_roots(&p, None), 16);
    let got = real_roots(&p, 0.0, 1.0, 1e-14);
    let want = grid_roots(&p, 20_000);
    assert_eq!(got.len(), 16);
    assert_eq!(want.len(), 16);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-10, "{g} vs {w}");
    }
}

#[test]
fn z2_z11_zero_in_radicals() {
    let certs = common_zero_2d(&[p(&[2]), p(&[1, 1])], 4, 1e-10).unwrap();
    assert_eq!(certs.len(), 4);
    let roots = nested_roots(7.0, 2.0, 6.0, 15.0);
    let target = [roots[1], roots[3]];
    let hit = certs
        .iter()
        .find(|c| (c.point[0] - target[0]).abs() < 1e-10 && (c.point[1] - target[1]).abs() < 1e-10);
    let hit = hit.expect("closed-form zero certified");
    assert_eq!(hit.kind, ZeroKind::CommonZero);
    assert!(hit.revalidate().unwrap());
    assert_eq!(hit.point_digits[0].trim_start_matches("0.").len(), 30);
}

#[test]
fn four_kappa_zero_in_radicals() {
    let kappas = [p(&[1]), p(&[3]), p(&[2, 1]), p(&[3, 1])];
    let certs = common_zero_2d(&kappas, 4, 1e-10).unwrap();
    assert_eq!(certs.len(), 4);
    let roots = nested_roots(15.0, 2.0, 30.0, 35.0);
    assert!(certs
        .iter()
        .any(|c| (c.point[0] - roots[1]).abs() < 1e-10 && (c.point[1] - roots[2]).abs() < 1e-10));
    for c in &certs {
        assert!((c.point[0] + c.point[1] - 1.0).abs() < 1e-10, "zeros lie on y1 + y2 = 1");
    }
}

#[test]
fn z4_z22_zeros_and_eliminant() {
    let certs = common_zero_2d(&[p(&[4]), p(&[2, 2])], 4, 1e-10).unwrap();
    assert_eq!(certs.len(), 16);
    assert!(certs
        .iter()
        .any(|c| (c.point[0] - 0.155944).abs() < 1e-5 && (c.point[1] - 0.648664).abs() < 1e-5));
    let poly = certs[0].polynomial.as_ref().expect("eliminant recorded");
    let coeffs: Vec<BigRational> = poly.iter().map(|s| BigRational::from_integer(s.parse().unwrap())).collect();
    let elim = UniPoly::new(coeffs);
    let scale = elim.leading() / eliminant_z4_z22().leading();
    assert_eq!(elim, eliminant_z4_z22().scale(&scale));
}
