//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by construction and by the lattice/analysis operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("{context}: expected dimension {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("basis is rank deficient: rank {rank} < {cols} columns")]
    RankDeficientBasis { rank: usize, cols: usize },

    #[error("matrix is not Hermitian: ||M - M'||_F = {deviation:.3e}")]
    NonHermitian { deviation: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("index {index} out of range for family of {len} members")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("a subspace family needs at least two members, got {count}")]
    FamilyTooSmall { count: usize },

    #[error(
        "family member {index} violates properness: dimension {dim} in ambient dimension {ambient} \
         (members must satisfy 0 < dim < ambient)"
    )]
    ImproperMember {
        index: usize,
        dim: usize,
        ambient: usize,
    },

    #[error("dimension {d} is even; displacement operators need 2^-1 mod d, which exists only for odd d")]
    EvenDimension { d: usize },

    #[error("dimension {d} is below the minimum {min} for this construction")]
    DimensionTooSmall { d: usize, min: usize },

    #[error("fiducial vector is not normalized: ||f|| = {norm}")]
    FiducialNotUnit { norm: f64 },

    #[error("fiducial vector is not generic: {reason}")]
    FiducialNotGeneric { reason: String },

    #[error("orthogonal expansion requires a weakly total family of independent subspaces; this family fails: {failing}")]
    ExpansionPrecondition { failing: &'static str },

    #[error("vector does not lie in the given subspace (projection residual {residual:.3e})")]
    NotInSubspace { residual: f64 },

    #[error("zero vector cannot span a subspace")]
    ZeroVector,

    #[error("invalid tolerance policy: {reason}")]
    InvalidTolerance { reason: String },

    #[error("unknown tolerance profile '{name}' (known: default, strict, relaxed)")]
    UnknownToleranceProfile { name: String },

    #[error("invalid pentagram cycle: {reason}")]
    InvalidPentagram { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
