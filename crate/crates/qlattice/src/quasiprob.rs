//! Density matrices and the three quasi-probability distributions of a
//! subspace family.
//!
//! For a family `{H_i}` and a state `rho`, the profile collects the
//! yes-probabilities of three measurements per index:
//!
//! * `R(i)  = Tr[rho P(H_i)]` for the member itself,
//! * `R~(i) = Tr[rho P(isolated_part(i))]` for the part of `H_i`
//!   disjoint from every other member,
//! * `R^(i) = Tr[rho P(augmented_part(i))]` for `H_i` extended by the
//!   common core of the other members,
//!
//! which always satisfy `0 <= R~(i) <= R(i) <= R^(i) <= 1`.

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::matrix::{self, CMatrix, CVector};
use crate::tolerance::TolerancePolicy;

/// A `d x d` Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, tol: &TolerancePolicy) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("matrix is {}x{}, not square", matrix.nrows(), matrix.ncols()),
            });
        }
        matrix::ensure_finite(&matrix)?;
        let deviation = matrix::hermitian_deviation(&matrix);
        if deviation > tol.eq_atol {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("not Hermitian (deviation {deviation:.3e})"),
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol.eq_atol || trace.im.abs() > tol.eq_atol {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace is {trace}, expected 1"),
            });
        }
        if !matrix::is_positive_semidefinite(&matrix, tol)? {
            let min = matrix::hermitian_eigenvalues(&matrix, tol)?[0];
            return Err(Error::InvalidDensityMatrix {
                reason: format!("not positive semidefinite (minimum eigenvalue {min:.3e})"),
            });
        }
        Ok(Self { matrix })
    }

    /// The pure state `|s><s|`; the input is normalized.
    pub fn pure(state: &CVector, _tol: &TolerancePolicy) -> Result<Self> {
        matrix::ensure_finite_vector(state)?;
        let norm = state.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let normalized = state.map(|z| z / norm);
        let matrix = &normalized * normalized.adjoint();
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `Re Tr(rho M)` for a Hermitian observable `M`.
    pub fn expectation(&self, observable: &CMatrix) -> f64 {
        matrix::trace_product_re(&self.matrix, observable)
    }
}

/// The three quasi-probability distributions of a family under one state.
#[derive(Debug, Clone)]
pub struct QuasiProbProfile {
    pub r: Vec<f64>,
    pub r_tilde: Vec<f64>,
    pub r_hat: Vec<f64>,
}

impl QuasiProbProfile {
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }
}

/// Compute the quasi-probability profile of `family` under `rho`.
pub fn profile(family: &SubspaceFamily, rho: &DensityMatrix) -> Result<QuasiProbProfile> {
    if rho.dim() != family.ambient_dim() {
        return Err(Error::DimensionMismatch {
            context: "density matrix vs family ambient space",
            expected: family.ambient_dim(),
            found: rho.dim(),
        });
    }
    let tol = family.tolerance();
    let n = family.len();
    let mut r = Vec::with_capacity(n);
    let mut r_tilde = Vec::with_capacity(n);
    let mut r_hat = Vec::with_capacity(n);
    for i in 0..n {
        let member = family.member(i)?;
        let ri = rho.expectation(member.projector());
        let ti = rho.expectation(family.isolated_part(i)?.projector());
        let hi = rho.expectation(family.augmented_part(i)?.projector());
        debug_assert!(
            -tol.psd_atol <= ti && ti <= ri + tol.psd_atol && ri <= hi + tol.psd_atol
                && hi <= 1.0 + tol.psd_atol,
            "quasi-probability ordering violated at index {i}: {ti} {ri} {hi}"
        );
        r.push(ri);
        r_tilde.push(ti);
        r_hat.push(hi);
    }
    Ok(QuasiProbProfile { r, r_tilde, r_hat })
}
