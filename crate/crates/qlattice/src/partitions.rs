//! Partitions of the Hilbert space induced by subspaces, the dually
//! isomorphic partition lattice, and informational independence.
//!
//! The partition of `H(d)` induced by a subspace `H` has blocks
//! `|v> + H` with `|v>` ranging over `H-perp`. Blocks form a continuum,
//! so a partition is represented intensionally by its defining subspace
//! and block questions are answered through projections: the block of a
//! state is labelled by its `H-perp` projection. A projective measurement
//! `P(H-perp)` cannot distinguish states in a common block when the
//! outcome is yes, which is what makes partitions the right language for
//! informational independence.
//!
//! Terminology note: informational independence of a family is stated
//! here against the defined totalness levels of the complements (for a
//! pair, independence of `{H_1, H_2}` is totalness of
//! `{H_1-perp, H_2-perp}`). A level stronger than "total" is sometimes
//! alluded to for the n-family complement structure but never defined;
//! this module deliberately exposes only the defined levels.

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::independence::independence_level;
use crate::jacobi;
use crate::matrix::{self, CMatrix, CVector};
use crate::subspace::Subspace;
use crate::tolerance::TolerancePolicy;

/// The partition of the ambient space into blocks `|v> + H`.
#[derive(Debug, Clone)]
pub struct Partition {
    subspace: Subspace,
}

impl Partition {
    /// Partition induced by a subspace. The extremes are valid: the
    /// partition of the zero space has singleton blocks, the partition of
    /// the full space has one block.
    pub fn of(subspace: Subspace) -> Self {
        Self { subspace }
    }

    pub fn defining_subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    /// Partition join: `join(part(H1), part(H2)) = part(H1 ^ H2)`.
    pub fn join(&self, other: &Partition, tol: &TolerancePolicy) -> Result<Partition> {
        Ok(Partition::of(self.subspace.meet(&other.subspace, tol)?))
    }

    /// Partition meet: `meet(part(H1), part(H2)) = part(H1 v H2)`.
    pub fn meet(&self, other: &Partition, tol: &TolerancePolicy) -> Result<Partition> {
        Ok(Partition::of(self.subspace.join(&other.subspace, tol)?))
    }

    /// Orthocomplement: `part(H)-perp = part(H-perp)`.
    pub fn complement(&self, tol: &TolerancePolicy) -> Partition {
        Partition::of(self.subspace.orthocomplement(tol))
    }

    /// Refinement order: `part(H1) <= part(H2)` iff `H2 <= H1` (the
    /// lattice of partitions is dually isomorphic to the subspace
    /// lattice).
    pub fn leq(&self, other: &Partition, tol: &TolerancePolicy) -> Result<bool> {
        other.subspace.leq(&self.subspace, tol)
    }

    pub fn approx_eq(&self, other: &Partition, tol: &TolerancePolicy) -> bool {
        self.subspace.approx_eq(&other.subspace, tol)
    }

    /// The label of the block containing `s`: its projection onto the
    /// complement of the defining subspace.
    pub fn block_representative(&self, s: &CVector, tol: &TolerancePolicy) -> Result<CVector> {
        if s.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                context: "state vs partition ambient space",
                expected: self.ambient_dim(),
                found: s.len(),
            });
        }
        let complement = self.subspace.orthocomplement(tol);
        Ok(complement.projector() * s)
    }

    /// Two states share a block exactly when their complement projections
    /// agree.
    pub fn same_block(&self, s1: &CVector, s2: &CVector, tol: &TolerancePolicy) -> Result<bool> {
        let r1 = self.block_representative(s1, tol)?;
        let r2 = self.block_representative(s2, tol)?;
        Ok((r1 - r2).norm() <= tol.eq_atol)
    }
}

/// A vector in the intersection of two affine blocks, when one exists.
#[derive(Debug, Clone)]
pub struct BlockWitness {
    pub vector: Option<CVector>,
}

impl BlockWitness {
    pub fn found(&self) -> bool {
        self.vector.is_some()
    }
}

/// Search for a vector in `(v1 + h1-perp) ^ (v2 + h2-perp)` with
/// `v1 in h1`, `v2 in h2`.
///
/// The defining equation `a2 - a1 = v1 - v2` (unknowns in the two
/// complements) is solved by minimum-norm least squares; existence is
/// decided by the residual, which is either at rounding level or
/// macroscopic because the underlying question is exact containment.
pub fn block_intersection_witness(
    h1: &Subspace,
    v1: &CVector,
    h2: &Subspace,
    v2: &CVector,
    tol: &TolerancePolicy,
) -> Result<BlockWitness> {
    if h1.ambient_dim() != h2.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: h1.ambient_dim(),
            right: h2.ambient_dim(),
        });
    }
    for (h, v) in [(h1, v1), (h2, v2)] {
        if !h.contains_vector(v, tol)? {
            let residual = (h.projector() * v - v).norm();
            return Err(Error::NotInSubspace { residual });
        }
    }

    let d = h1.ambient_dim();
    let c1 = h1.orthocomplement(tol);
    let c2 = h2.orthocomplement(tol);
    let k1 = c1.dim();
    let k2 = c2.dim();
    let rhs = v2 - v1;

    // a1 = B1 x1, a2 = B2 x2 with B1 x1 - B2 x2 = v2 - v1 makes
    // v1 + a1 = v2 + a2 the sought intersection vector.
    let mut stacked = CMatrix::zeros(d, k1 + k2);
    stacked.columns_mut(0, k1).copy_from(c1.basis());
    stacked
        .columns_mut(k1, k2)
        .copy_from(&c2.basis().map(|z| -z));

    let threshold = tol.eq_atol * (1.0 + rhs.norm());
    if k1 + k2 == 0 {
        let vector = (rhs.norm() <= threshold).then(|| v1.clone());
        return Ok(BlockWitness { vector });
    }
    let x = jacobi::least_squares_min_norm(&stacked, &rhs, tol.rank_rtol);
    let residual = (&stacked * &x - &rhs).norm();
    if residual > threshold {
        return Ok(BlockWitness { vector: None });
    }
    let a1 = c1.basis() * x.rows(0, k1);
    Ok(BlockWitness {
        vector: Some(v1 + a1),
    })
}

/// Informational independence of a family: for every `i`, knowing the
/// block of the partition induced by the span of the other members puts
/// no constraint on the block of the partition induced by `H_i`.
///
/// By the containment criterion this is `others_join(i) v H_i` contained
/// in `others_join(i)-perp v H_i-perp` for all `i`, and it coincides with
/// full independence.
pub fn informationally_independent(family: &SubspaceFamily) -> bool {
    let tol = family.tolerance();
    let mut verdict = true;
    for i in 0..family.len() {
        let a = family.others_join(i).expect("index in range");
        let b = family.member(i).expect("index in range");
        let direct = a.join(b, tol).expect("same ambient");
        let complements = a
            .orthocomplement(tol)
            .join(&b.orthocomplement(tol), tol)
            .expect("same ambient");
        if !direct.leq(&complements, tol).expect("same ambient") {
            verdict = false;
            break;
        }
    }
    // The partition criterion must coincide with lattice independence.
    debug_assert_eq!(
        verdict,
        independence_level(family).full,
        "informational independence diverged from independence"
    );
    verdict
}

/// Outcome of a projective measurement of `P(H)` on a pure state.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub yes_probability: f64,
    /// Collapsed state on a yes outcome; absent when the probability
    /// vanishes.
    pub yes_state: Option<CVector>,
    pub no_probability: f64,
    /// Collapsed state on a no outcome; absent when the probability
    /// vanishes.
    pub no_state: Option<CVector>,
}

/// Measure the projector of `h` on the (normalized) pure state `s`: yes
/// collapses onto `h`, no onto its complement, each with renormalization.
pub fn measure_pure(
    s: &CVector,
    h: &Subspace,
    tol: &TolerancePolicy,
) -> Result<MeasurementOutcome> {
    if s.len() != h.ambient_dim() {
        return Err(Error::DimensionMismatch {
            context: "state vs subspace ambient space",
            expected: h.ambient_dim(),
            found: s.len(),
        });
    }
    matrix::ensure_finite_vector(s)?;
    let norm = s.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let state = s.map(|z| z / norm);
    let yes_part = h.projector() * &state;
    let yes_probability = yes_part.norm_squared();
    let no_part = &state - &yes_part;
    let no_probability = no_part.norm_squared();
    let floor = tol.psd_atol;
    Ok(MeasurementOutcome {
        yes_probability,
        yes_state: (yes_probability > floor).then(|| yes_part.map(|z| z / yes_probability.sqrt())),
        no_probability,
        no_state: (no_probability > floor).then(|| no_part.map(|z| z / no_probability.sqrt())),
    })
}
