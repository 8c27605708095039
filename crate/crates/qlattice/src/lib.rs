//! Computations in the lattice of subspaces of a finite-dimensional
//! complex Hilbert space.
//!
//! The crate provides:
//!
//! * a complex dense linear-algebra kernel with one explicit tolerance
//!   policy ([`matrix`], [`tolerance`]);
//! * the subspace lattice: meet, join, orthocomplement, the partial
//!   order, and commutativity of subspaces ([`subspace`]);
//! * quasi-probability profiles of subspace families under a density
//!   matrix ([`quasiprob`]);
//! * the independence and totalness hierarchies with their degree
//!   matrices, the comparison preorder, and orthogonal expansions
//!   ([`independence`]);
//! * partitions of the Hilbert space and informational independence
//!   ([`partitions`]);
//! * finite quantum systems over the integers modulo `d`: Fourier and
//!   displacement operators, coherent states, and the standard families
//!   ([`phase_space`]);
//! * the pentagram contextuality analysis in dimension three
//!   ([`pentagram`]);
//! * JSON wire formats and report documents ([`wire`], [`report`]).
//!
//! All values are immutable after construction and all operations are
//! pure, so everything can be shared across threads freely.

pub mod error;
pub mod family;
pub mod independence;
pub mod jacobi;
pub mod matrix;
pub mod partitions;
pub mod pentagram;
pub mod phase_space;
pub mod quasiprob;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod subspace;
pub mod tolerance;
pub mod wire;

pub use error::{Error, Result};

/// Re-export of the complex scalar type used throughout the crate.
pub use num_complex::Complex64;
pub use family::SubspaceFamily;
pub use independence::{DegreeKind, DegreeReport, IndependenceOrder, LevelReport};
pub use matrix::{CMatrix, CVector};
pub use partitions::{BlockWitness, MeasurementOutcome, Partition};
pub use pentagram::PentagramReport;
pub use phase_space::FiniteSystem;
pub use quasiprob::{DensityMatrix, QuasiProbProfile};
pub use subspace::Subspace;
pub use tolerance::TolerancePolicy;
