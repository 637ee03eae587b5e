use nalgebra::{Schur, SymmetricEigen};
use num_complex::Complex64;

use super::{ComplexMatrix, ZERO};
use crate::{Error, Result, Tolerances};

pub(crate) fn schur_form(u: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    Schur::try_new(u.clone(), f64::EPSILON, 10_000)
        .expect("complex Schur iteration failed to converge")
        .unpack()
}

pub fn is_skew_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    let n = a.nrows();
    if a.ncols() != n {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if (a[(i, j)] + a[(j, i)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Principal logarithm of a unitary matrix.
///
/// The result is skew-Hermitian with eigenphases in `(-π, π)`. An
/// eigenvalue within `tol.branch_cut` of `-1` is reported as
/// [`Error::BranchCut`] instead of picking a side.
pub fn mat_log(u: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    super::check_unitary(u, tol.unitarity)?;
    let n = u.nrows();
    let (q, t) = if n == 1 {
        (super::identity(1), u.clone())
    } else {
        schur_form(u)
    };
    let mut diag = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let lam = t[(i, i)];
        let distance = (lam + 1.0).norm();
        if distance < tol.branch_cut {
            return Err(Error::BranchCut { distance });
        }
        diag[(i, i)] = Complex64::new(0.0, lam.arg());
    }
    let mut a = &q * diag * q.adjoint();
    skew_symmetrize(&mut a);
    Ok(a)
}

/// Matrix exponential.
///
/// Skew-Hermitian input goes through a Hermitian eigendecomposition so the
/// output is unitary to rounding; anything else uses Padé scaling and
/// squaring.
pub fn mat_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !super::is_finite(a) {
        return Err(Error::NonFinite);
    }
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.ncols(),
        });
    }
    let out = if is_skew_hermitian(a, 1e-10) {
        // A = -iH with H Hermitian
        let h = a * Complex64::new(0.0, 1.0);
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(h);
        let mut d = ComplexMatrix::from_element(n, n, ZERO);
        for i in 0..n {
            d[(i, i)] = Complex64::from_polar(1.0, -eig.eigenvalues[i]);
        }
        &eig.eigenvectors * d * eig.eigenvectors.adjoint()
    } else {
        a.exp()
    };
    if !super::is_finite(&out) {
        return Err(Error::NonFinite);
    }
    Ok(out)
}

fn skew_symmetrize(a: &mut ComplexMatrix) {
    let s = (&*a - a.adjoint()) * Complex64::new(0.5, 0.0);
    *a = s;
}
