//! Dense complex linear algebra kernel.
//!
//! Everything above this module speaks in terms of these primitives:
//! orthonormalization and rank, projectors, Hermitian eigendecomposition,
//! and semidefiniteness tests, all governed by one [`TolerancePolicy`].
//! Decompositions come from the Jacobi routines in [`crate::jacobi`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jacobi;
use crate::tolerance::TolerancePolicy;

/// Dense complex matrix, the carrier for projectors, density matrices and
/// operator-valued quantities.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex vector (a state, a spanning vector, a fiducial vector).
pub type CVector = DVector<Complex64>;

/// Reject NaN and infinite entries eagerly; silent tolerance corruption is
/// much harder to debug than an early error.
pub fn ensure_finite(m: &CMatrix) -> Result<()> {
    for col in 0..m.ncols() {
        for row in 0..m.nrows() {
            let z = m[(row, col)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
        }
    }
    Ok(())
}

pub fn ensure_finite_vector(v: &CVector) -> Result<()> {
    for (row, z) in v.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { row, col: 0 });
        }
    }
    Ok(())
}

/// Stack vectors of a common length as the columns of a matrix.
pub fn matrix_from_columns(vectors: &[CVector]) -> Result<CMatrix> {
    let d = match vectors.first() {
        Some(v) => v.len(),
        None => return Ok(CMatrix::zeros(0, 0)),
    };
    for v in vectors {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                context: "stacked vectors",
                expected: d,
                found: v.len(),
            });
        }
        ensure_finite_vector(v)?;
    }
    let mut m = CMatrix::zeros(d, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    Ok(m)
}

/// Number of singular values above the rank cutoff.
///
/// The cutoff is `rank_rtol * max(sigma_max, 1)`. The floor at 1 matters
/// when the input is a numerically-zero matrix (for example `1 - P` for a
/// projector `P` onto the full space): a purely relative cutoff would keep
/// its rounding noise as spurious rank. All legitimate inputs in this
/// crate carry unit-scale columns, for which the floor never binds.
fn retained_rank(singular_values: &[f64], tol: &TolerancePolicy) -> usize {
    let smax = singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let cutoff = tol.rank_rtol * smax.max(1.0);
    singular_values.iter().filter(|&&s| s > cutoff).count()
}

/// Numerical rank at the policy's singular-value cutoff.
pub fn rank(m: &CMatrix, tol: &TolerancePolicy) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = jacobi::svd(m, false, false);
    retained_rank(&svd.sigma, tol)
}

/// Orthonormal basis of the column space of `m` (left singular vectors of
/// the retained spectrum). Returns a `d x k` matrix with `k = rank(m)`.
/// Column order is the decomposition's and is not canonical.
pub fn orthonormalize_columns(m: &CMatrix, tol: &TolerancePolicy) -> CMatrix {
    let d = m.nrows();
    if d == 0 || m.ncols() == 0 {
        return CMatrix::zeros(d, 0);
    }
    // Columns that are already orthonormal to machine precision are kept
    // bit-for-bit (and in caller order): re-running the decomposition
    // would only stir the last bits, which breaks byte-stable round trips
    // of serialized bases.
    if m.ncols() <= d {
        let gram = m.adjoint() * m;
        let k = m.ncols();
        if (&gram - CMatrix::identity(k, k)).norm() <= 1e-13 * (k as f64).sqrt() {
            return m.clone();
        }
    }
    let svd = jacobi::svd(m, true, false);
    let k = retained_rank(&svd.sigma, tol);
    let u = svd.u.expect("svd requested u");
    u.columns(0, k).into_owned()
}

/// Orthonormal basis for the span of the given vectors.
///
/// The column space of the result equals the span of the inputs and the
/// number of columns is their numerical rank.
pub fn orthonormal_basis(vectors: &[CVector], tol: &TolerancePolicy) -> Result<CMatrix> {
    let m = matrix_from_columns(vectors)?;
    Ok(orthonormalize_columns(&m, tol))
}

/// Orthonormal basis of the nullspace of `m` (as columns).
pub fn nullspace(m: &CMatrix, tol: &TolerancePolicy) -> CMatrix {
    let cols = m.ncols();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return CMatrix::identity(cols, cols);
    }
    let svd = jacobi::svd(m, false, true);
    let r = retained_rank(&svd.sigma, tol);
    let v = svd.v.expect("svd requested v");
    v.columns(r, cols - r).into_owned()
}

/// Projector onto the column space of a full-column-rank basis matrix,
/// computed as `M (M' M)^-1 M'`.
pub fn projector(basis: &CMatrix, tol: &TolerancePolicy) -> Result<CMatrix> {
    let d = basis.nrows();
    let k = basis.ncols();
    if k == 0 {
        return Ok(CMatrix::zeros(d, d));
    }
    ensure_finite(basis)?;
    let r = rank(basis, tol);
    if r < k {
        return Err(Error::RankDeficientBasis { rank: r, cols: k });
    }
    let gram = basis.adjoint() * basis;
    let chol = gram
        .cholesky()
        .ok_or(Error::RankDeficientBasis { rank: r, cols: k })?;
    let solved = chol.solve(&basis.adjoint());
    let pi = basis * solved;
    Ok(hermitian_part(&pi))
}

/// `(M + M') / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Frobenius distance between the matrix and its adjoint.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

fn ensure_hermitian(m: &CMatrix, tol: &TolerancePolicy) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            context: "hermitian matrix",
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    ensure_finite(m)?;
    let deviation = hermitian_deviation(m);
    if deviation > tol.eq_atol {
        return Err(Error::NonHermitian { deviation });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn hermitian_eigenvalues(m: &CMatrix, tol: &TolerancePolicy) -> Result<Vec<f64>> {
    ensure_hermitian(m, tol)?;
    Ok(jacobi::hermitian_eigen(&hermitian_part(m)).0)
}

/// Eigenvalues (ascending) and matching eigenvector columns of a
/// Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix, tol: &TolerancePolicy) -> Result<(Vec<f64>, CMatrix)> {
    ensure_hermitian(m, tol)?;
    Ok(jacobi::hermitian_eigen(&hermitian_part(m)))
}

/// True when every eigenvalue of the Hermitian matrix is at most `psd_atol`.
pub fn is_negative_semidefinite(m: &CMatrix, tol: &TolerancePolicy) -> Result<bool> {
    let values = hermitian_eigenvalues(m, tol)?;
    Ok(values.last().is_none_or(|&max| max <= tol.psd_atol))
}

/// True when every eigenvalue of the Hermitian matrix is at least `-psd_atol`.
pub fn is_positive_semidefinite(m: &CMatrix, tol: &TolerancePolicy) -> Result<bool> {
    let values = hermitian_eigenvalues(m, tol)?;
    Ok(values.first().is_none_or(|&min| min >= -tol.psd_atol))
}

/// `Re Tr(A B)` without forming the product.
pub fn trace_product_re(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    acc
}

/// Frobenius norm of the commutator `AB - BA`.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (a * b - b * a).norm()
}

/// Entrywise comparison in the Frobenius norm.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, atol: f64) -> bool {
    a.shape() == b.shape() && (a - b).norm() <= atol
}
