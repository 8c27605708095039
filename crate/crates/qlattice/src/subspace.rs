//! Subspaces of a finite-dimensional complex Hilbert space and the
//! lattice operations on them.
//!
//! A [`Subspace`] is held as an orthonormal basis (`d x k` columns); the
//! zero space `O` (k = 0) and the full space `I` (k = d) are ordinary
//! values. Meet is computed through the De Morgan dual of join so that a
//! single orthonormalization primitive carries every rank decision.
//! Equality is projector-distance equality: orthonormal bases are not
//! unique, so bases are never compared directly.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, CVector};
use crate::tolerance::TolerancePolicy;

/// A subspace of `H(d)`, stored as an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMatrix,
    projector: OnceLock<CMatrix>,
}

impl Subspace {
    /// The zero subspace `O` of `H(d)`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: CMatrix::zeros(ambient_dim, 0),
            projector: OnceLock::new(),
        }
    }

    /// The full space `I = H(d)`.
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: CMatrix::identity(ambient_dim, ambient_dim),
            projector: OnceLock::new(),
        }
    }

    /// Subspace spanned by arbitrary vectors; the input is orthonormalized
    /// and its numerical rank becomes the dimension.
    pub fn from_spanning(vectors: &[CVector], tol: &TolerancePolicy) -> Result<Self> {
        let first = vectors.first().ok_or(Error::DimensionMismatch {
            context: "spanning set must contain at least one vector",
            expected: 1,
            found: 0,
        })?;
        let ambient_dim = first.len();
        let basis = matrix::orthonormal_basis(vectors, tol)?;
        Ok(Self {
            ambient_dim,
            basis,
            projector: OnceLock::new(),
        })
    }

    /// Subspace spanned by the columns of a matrix.
    pub fn from_spanning_matrix(m: &CMatrix, tol: &TolerancePolicy) -> Result<Self> {
        matrix::ensure_finite(m)?;
        Ok(Self {
            ambient_dim: m.nrows(),
            basis: matrix::orthonormalize_columns(m, tol),
            projector: OnceLock::new(),
        })
    }

    /// Wrap a matrix whose columns are already orthonormal.
    pub fn from_orthonormal(basis: CMatrix, tol: &TolerancePolicy) -> Result<Self> {
        matrix::ensure_finite(&basis)?;
        let k = basis.ncols();
        if k > basis.nrows() {
            return Err(Error::DimensionMismatch {
                context: "orthonormal basis",
                expected: basis.nrows(),
                found: k,
            });
        }
        let gram = basis.adjoint() * &basis;
        if !matrix::approx_eq(&gram, &CMatrix::identity(k, k), tol.eq_atol) {
            return Err(Error::RankDeficientBasis {
                rank: matrix::rank(&basis, tol),
                cols: k,
            });
        }
        Ok(Self {
            ambient_dim: basis.nrows(),
            basis,
            projector: OnceLock::new(),
        })
    }

    /// One-dimensional subspace containing the given vector.
    pub fn line(v: &CVector, tol: &TolerancePolicy) -> Result<Self> {
        matrix::ensure_finite_vector(v)?;
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Self::from_spanning(std::slice::from_ref(v), tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the subspace (number of basis columns).
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// True for `0 < dim < d`.
    pub fn is_proper(&self) -> bool {
        !self.is_zero() && !self.is_full()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// The orthogonal projector onto this subspace (`B B'`), cached after
    /// the first computation; the fill is idempotent so concurrent readers
    /// are fine.
    pub fn projector(&self) -> &CMatrix {
        self.projector.get_or_init(|| &self.basis * self.basis.adjoint())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Smallest subspace containing both operands (span of the union).
    pub fn join(&self, other: &Subspace, tol: &TolerancePolicy) -> Result<Subspace> {
        self.check_ambient(other)?;
        let d = self.ambient_dim;
        let mut stacked = CMatrix::zeros(d, self.dim() + other.dim());
        stacked.columns_mut(0, self.dim()).copy_from(&self.basis);
        stacked
            .columns_mut(self.dim(), other.dim())
            .copy_from(&other.basis);
        Ok(Subspace {
            ambient_dim: d,
            basis: matrix::orthonormalize_columns(&stacked, tol),
            projector: OnceLock::new(),
        })
    }

    /// Largest subspace contained in both operands, computed as the
    /// De Morgan dual of the join.
    pub fn meet(&self, other: &Subspace, tol: &TolerancePolicy) -> Result<Subspace> {
        self.check_ambient(other)?;
        let joined = self
            .orthocomplement(tol)
            .join(&other.orthocomplement(tol), tol)?;
        Ok(joined.orthocomplement(tol))
    }

    /// The unique orthocomplement.
    pub fn orthocomplement(&self, tol: &TolerancePolicy) -> Subspace {
        let d = self.ambient_dim;
        let residual = CMatrix::identity(d, d) - self.projector();
        Subspace {
            ambient_dim: d,
            basis: matrix::orthonormalize_columns(&residual, tol),
            projector: OnceLock::new(),
        }
    }

    /// Partial order of the lattice: true when `self` is a subspace of
    /// `other`, tested as `P_other P_self = P_self`.
    pub fn leq(&self, other: &Subspace, tol: &TolerancePolicy) -> Result<bool> {
        self.check_ambient(other)?;
        let product = other.projector() * self.projector();
        Ok(matrix::approx_eq(&product, self.projector(), tol.eq_atol))
    }

    /// Commutativity of subspaces, equivalent to commutativity of their
    /// projectors. In debug builds the result is cross-checked against the
    /// lattice reconstruction `a = (a ^ b) v (a ^ b-perp)`.
    pub fn commutes(&self, other: &Subspace, tol: &TolerancePolicy) -> Result<bool> {
        self.check_ambient(other)?;
        let norm = matrix::commutator_norm(self.projector(), other.projector());
        let commutes = norm <= tol.eq_atol;
        #[cfg(debug_assertions)]
        {
            let with = self.meet(other, tol)?;
            let without = self.meet(&other.orthocomplement(tol), tol)?;
            let reconstruction = with.join(&without, tol)?;
            debug_assert_eq!(
                commutes,
                reconstruction.approx_eq(self, tol),
                "commutator test and lattice reconstruction disagree"
            );
        }
        Ok(commutes)
    }

    /// Projector-distance equality. Subspaces of different ambient spaces
    /// are never equal.
    pub fn approx_eq(&self, other: &Subspace, tol: &TolerancePolicy) -> bool {
        self.ambient_dim == other.ambient_dim
            && matrix::approx_eq(
                self.projector(),
                other.projector(),
                tol.subspace_eq_tol(self.ambient_dim),
            )
    }

    /// Membership test: the projection residual of `v` is below
    /// `eq_atol * max(1, ||v||)`.
    pub fn contains_vector(&self, v: &CVector, tol: &TolerancePolicy) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "vector in ambient space",
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let residual = (self.projector() * v - v).norm();
        Ok(residual <= tol.eq_atol * v.norm().max(1.0))
    }
}
