//! Dense complex matrix kernels.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. The group-specific pieces
//! live here: unitarity checks, the principal logarithm on U(n), and the
//! mode-by-mode action of `U^{⊗r} ⊗ Ū^{⊗s}` on probe vectors.

mod expm;
pub mod io;
pub mod random;
mod tensor;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use expm::{is_skew_hermitian, mat_exp, mat_log};
pub use tensor::{apply_mode, tensor_moment_apply, ProbeVector};

pub type ComplexMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Max-norm of `U†U - I`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let n = u.nrows();
    if u.ncols() != n {
        return f64::INFINITY;
    }
    let p = u.adjoint() * u;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((p[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    is_finite(u) && unitarity_defect(u) <= tol
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn check_unitary(u: &ComplexMatrix, tol: f64) -> crate::Result<()> {
    if !is_finite(u) {
        return Err(crate::Error::NonFinite);
    }
    let defect = unitarity_defect(u);
    if defect > tol {
        return Err(crate::Error::NotUnitary { defect });
    }
    Ok(())
}

/// Max-norm of `a - b`. Panics on shape mismatch.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Block-diagonal matrix `diag(a, b)`.
pub fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, k) = (a.nrows(), b.nrows());
    let mut out = ComplexMatrix::zeros(m + k, m + k);
    out.view_mut((0, 0), (m, m)).copy_from(a);
    out.view_mut((m, m), (k, k)).copy_from(b);
    out
}

/// Scalar phase `e^{iφ}` as a 1×1 matrix.
pub fn phase(phi: f64) -> ComplexMatrix {
    ComplexMatrix::from_element(1, 1, Complex64::from_polar(1.0, phi))
}

/// Frobenius norm of `a - b`.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm()
}

/// Eigenvalues of a unitary (more generally normal) matrix, read off the
/// diagonal of its complex Schur form.
pub fn unitary_eigenvalues(u: &ComplexMatrix) -> Vec<Complex64> {
    if u.nrows() == 1 {
        return vec![u[(0, 0)]];
    }
    let (_, t) = expm::schur_form(u);
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Trace of `a† b`, i.e. the Hilbert–Schmidt inner product.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}
