//! Jacobi decompositions for small dense complex matrices.
//!
//! The lattice operations live and die by rank decisions on matrices with
//! highly clustered spectra (projectors, differences of projectors), where
//! bidiagonalization-based solvers can lose accuracy. Cyclic Jacobi
//! iterations are unconditionally convergent, deterministic, and compute
//! small singular values with high relative accuracy, which is exactly
//! what the `rank_rtol` cutoff needs. Matrices here are tiny (dimension a
//! few dozen at most), so the O(n^3) sweeps are irrelevant.

use num_complex::Complex64;

use crate::matrix::CMatrix;

const MAX_SWEEPS: usize = 64;
/// Relative off-diagonal target; a couple of orders above machine epsilon
/// keeps the sweep count low without affecting any rank decision.
const CONVERGENCE_EPS: f64 = 1e-14;
/// Squared-norm floor below which a column is left alone. Rotations
/// between denormal-scale noise columns compute phases from denormal
/// quotients, which are no longer unit modulus and destroy the unitarity
/// of the accumulated transform.
const COLUMN_GUARD: f64 = 1e-270;

/// Plane rotation diagonalizing the Hermitian 2x2 matrix [[a, g], [g*, b]].
///
/// Returns `(c, s, phase)` so that the unitary `[[c, s], [-s*phase, c*phase]]`
/// applied from the right orthogonalizes the corresponding column pair.
fn rotation(a: f64, b: f64, g: Complex64) -> (f64, f64, Complex64) {
    let gnorm = g.norm();
    debug_assert!(gnorm > 0.0);
    let phase = g.conj() / gnorm;
    let w = (a - b) / (2.0 * gnorm);
    let t = if w >= 0.0 {
        -1.0 / (w + (w * w + 1.0).sqrt())
    } else {
        1.0 / (-w + (w * w + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c, phase)
}

pub struct Svd {
    /// Singular values in descending order (one per input column).
    pub sigma: Vec<f64>,
    /// Left singular vectors, present when requested; columns follow `sigma`.
    pub u: Option<CMatrix>,
    /// Right singular vectors, present when requested; columns follow `sigma`.
    pub v: Option<CMatrix>,
}

/// One-sided (Hestenes) Jacobi SVD of an arbitrary complex matrix.
///
/// Rotates column pairs until all are mutually orthogonal; the column
/// norms are then the singular values. `m = U diag(sigma) V^H` on the
/// retained part of the spectrum.
pub fn svd(m: &CMatrix, want_u: bool, want_v: bool) -> Svd {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut work = m.clone();
    let mut v = want_v.then(|| CMatrix::identity(cols, cols));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in (p + 1)..cols {
                let mut a = 0.0;
                let mut b = 0.0;
                let mut g = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    let wp = work[(r, p)];
                    let wq = work[(r, q)];
                    a += wp.norm_sqr();
                    b += wq.norm_sqr();
                    g += wp.conj() * wq;
                }
                if a <= COLUMN_GUARD || b <= COLUMN_GUARD {
                    continue;
                }
                if g.norm() <= CONVERGENCE_EPS * a.sqrt() * b.sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = rotation(a, b, g);
                for r in 0..rows {
                    let wp = work[(r, p)];
                    let wq = work[(r, q)];
                    work[(r, p)] = wp * c - wq * (phase * s);
                    work[(r, q)] = wp * s + wq * (phase * c);
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..cols {
                        let vp = v[(r, p)];
                        let vq = v[(r, q)];
                        v[(r, p)] = vp * c - vq * (phase * s);
                        v[(r, q)] = vp * s + vq * (phase * c);
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = (0..cols).map(|j| work.column(j).norm()).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).expect("finite norms"));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = want_u.then(|| {
        let mut u = CMatrix::zeros(rows, cols);
        for (dst, &src) in order.iter().enumerate() {
            let norm = norms[src];
            if norm > 0.0 {
                u.set_column(dst, &work.column(src).map(|z| z / norm));
            }
        }
        u
    });
    let v = v.map(|v| {
        let mut sorted = CMatrix::zeros(cols, cols);
        for (dst, &src) in order.iter().enumerate() {
            sorted.set_column(dst, &v.column(src).into_owned());
        }
        sorted
    });

    Svd { sigma, u, v }
}

/// Eigendecomposition of a Hermitian matrix by cyclic two-sided Jacobi.
///
/// Returns eigenvalues in ascending order with the matching eigenvector
/// columns. The caller is responsible for passing a Hermitian input.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    let mut a = m.clone();
    let mut vectors = CMatrix::identity(n, n);
    let scale = a.norm();

    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    let g = a[(p, q)];
                    if g.norm() <= CONVERGENCE_EPS * scale {
                        continue;
                    }
                    rotated = true;
                    let (c, s, phase) = rotation(a[(p, p)].re, a[(q, q)].re, g);
                    // A <- J^H A J with J the embedded 2x2 rotation.
                    for r in 0..n {
                        let arp = a[(r, p)];
                        let arq = a[(r, q)];
                        a[(r, p)] = arp * c - arq * (phase * s);
                        a[(r, q)] = arp * s + arq * (phase * c);
                    }
                    for r in 0..n {
                        let apr = a[(p, r)];
                        let aqr = a[(q, r)];
                        a[(p, r)] = apr * c - aqr * (phase.conj() * s);
                        a[(q, r)] = apr * s + aqr * (phase.conj() * c);
                    }
                    for r in 0..n {
                        let vp = vectors[(r, p)];
                        let vq = vectors[(r, q)];
                        vectors[(r, p)] = vp * c - vq * (phase * s);
                        vectors[(r, q)] = vp * s + vq * (phase * c);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut sorted = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sorted.set_column(dst, &vectors.column(src).into_owned());
    }
    (values, sorted)
}

/// Minimum-norm least-squares solution of `m x = b` through the SVD,
/// truncating singular values at `cutoff`.
pub fn least_squares_min_norm(
    m: &CMatrix,
    b: &nalgebra::DVector<Complex64>,
    cutoff: f64,
) -> nalgebra::DVector<Complex64> {
    let cols = m.ncols();
    let mut x = nalgebra::DVector::<Complex64>::zeros(cols);
    if cols == 0 {
        return x;
    }
    let svd = svd(m, true, true);
    let u = svd.u.expect("u requested");
    let v = svd.v.expect("v requested");
    for (i, &s) in svd.sigma.iter().enumerate() {
        if s <= cutoff {
            break;
        }
        let coeff = (u.column(i).adjoint() * b)[(0, 0)] / s;
        x += v.column(i) * coeff;
    }
    x
}
