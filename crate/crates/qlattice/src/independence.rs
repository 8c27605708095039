//! Independence and totalness of subspace families: the level hierarchy,
//! the degree matrices with their scalar degrees, the comparison preorder,
//! and the orthogonal expansion of a weakly total independent family.
//!
//! A family is *independent* when each member meets the span of all the
//! others only in the zero space, and *total* when each member joins the
//! common core of the others to the full space. Both notions come with
//! strictly weaker pairwise and weak variants because the lattice of
//! subspaces is not distributive; the degree matrices quantify the ground
//! between the extremes.

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::matrix::{self, CMatrix, CVector};
use crate::quasiprob::{profile, DensityMatrix};
use crate::subspace::Subspace;

/// Which hierarchy a report or degree matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    Independence,
    Totalness,
}

/// A failing index together with the subspace witnessing the failure: the
/// overlap `others_join(i) ^ H_i` for independence, the uncovered gap
/// `(others_meet(i) v H_i)-perp` for totalness.
#[derive(Debug, Clone)]
pub struct LevelWitness {
    pub index: usize,
    pub offending: Subspace,
}

/// Flags for one hierarchy; `full` implies both `pairwise` and `weak`.
#[derive(Debug, Clone)]
pub struct LevelReport {
    pub pairwise: bool,
    pub full: bool,
    pub weak: bool,
    pub witnesses: Vec<LevelWitness>,
}

impl LevelReport {
    fn new(pairwise: bool, full: bool, weak: bool, witnesses: Vec<LevelWitness>) -> Self {
        assert!(!full || (pairwise && weak), "hierarchy violated: full level must imply the weaker ones");
        Self {
            pairwise,
            full,
            weak,
            witnesses,
        }
    }
}

/// Classify a family on the independence hierarchy.
///
/// * full:     `others_join(i) ^ H_i = O` for every `i`
/// * pairwise: `H_i ^ H_j = O` for every pair
/// * weak:     `H_1 ^ ... ^ H_n = O`
pub fn independence_level(family: &SubspaceFamily) -> LevelReport {
    let tol = family.tolerance();
    let n = family.len();

    let mut full = true;
    let mut witnesses = Vec::new();
    for i in 0..n {
        let overlap = family
            .others_join(i)
            .expect("index in range")
            .meet(family.member(i).expect("index in range"), tol)
            .expect("same ambient");
        if !overlap.is_zero() {
            full = false;
            witnesses.push(LevelWitness {
                index: i,
                offending: overlap,
            });
        }
    }

    let mut pairwise = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let met = family
                .member(i)
                .expect("index in range")
                .meet(family.member(j).expect("index in range"), tol)
                .expect("same ambient");
            if !met.is_zero() {
                pairwise = false;
                break 'outer;
            }
        }
    }

    let weak = family.meet_all().is_zero();
    LevelReport::new(pairwise, full, weak, witnesses)
}

/// Classify a family on the totalness hierarchy.
///
/// * full:     `others_meet(i) v H_i = H(d)` for every `i`
/// * pairwise: `H_i v H_j = H(d)` for every pair
/// * weak:     `H_1 v ... v H_n = H(d)`
pub fn totalness_level(family: &SubspaceFamily) -> LevelReport {
    let tol = family.tolerance();
    let n = family.len();

    let mut full = true;
    let mut witnesses = Vec::new();
    for i in 0..n {
        let covered = family.augmented_part(i).expect("index in range");
        if !covered.is_full() {
            full = false;
            witnesses.push(LevelWitness {
                index: i,
                offending: covered.orthocomplement(tol),
            });
        }
    }

    let mut pairwise = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let joined = family
                .member(i)
                .expect("index in range")
                .join(family.member(j).expect("index in range"), tol)
                .expect("same ambient");
            if !joined.is_full() {
                pairwise = false;
                break 'outer;
            }
        }
    }

    let weak = family.join_all().is_full();
    LevelReport::new(pairwise, full, weak, witnesses)
}

/// The matrix quantifying the distance of a family from the orthogonal
/// extreme of the independence hierarchy:
/// `(1/n) sum_i [P(H_i) - P(isolated_part(i))]`.
pub fn independence_matrix(family: &SubspaceFamily) -> CMatrix {
    let d = family.ambient_dim();
    let mut acc = CMatrix::zeros(d, d);
    for i in 0..family.len() {
        acc += family.member(i).expect("index in range").projector();
        acc -= family.isolated_part(i).expect("index in range").projector();
    }
    acc.scale(1.0 / family.len() as f64)
}

/// The matrix quantifying the distance of a family from the total extreme
/// of the totalness hierarchy:
/// `(1/n) sum_i [P(augmented_part(i)) - P(H_i)]`.
pub fn totalness_matrix(family: &SubspaceFamily) -> CMatrix {
    let d = family.ambient_dim();
    let mut acc = CMatrix::zeros(d, d);
    for i in 0..family.len() {
        acc += family.augmented_part(i).expect("index in range").projector();
        acc -= family.member(i).expect("index in range").projector();
    }
    acc.scale(1.0 / family.len() as f64)
}

/// A degree matrix together with its scalar degree under a given state.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub kind: DegreeKind,
    pub matrix: CMatrix,
    pub degree: f64,
}

fn degree_report(
    family: &SubspaceFamily,
    rho: &DensityMatrix,
    kind: DegreeKind,
) -> Result<DegreeReport> {
    if rho.dim() != family.ambient_dim() {
        return Err(Error::DimensionMismatch {
            context: "density matrix vs family ambient space",
            expected: family.ambient_dim(),
            found: rho.dim(),
        });
    }
    let matrix = match kind {
        DegreeKind::Independence => independence_matrix(family),
        DegreeKind::Totalness => totalness_matrix(family),
    };
    let degree = rho.expectation(&matrix);

    // Two independent routes: degree from the matrix trace against the
    // per-index quasi-probability sums. Disagreement means the tolerance
    // chain is corrupted, which must not pass silently.
    let p = profile(family, rho)?;
    let n = family.len() as f64;
    let from_profile: f64 = match kind {
        DegreeKind::Independence => p
            .r
            .iter()
            .zip(&p.r_tilde)
            .map(|(r, rt)| r - rt)
            .sum::<f64>(),
        DegreeKind::Totalness => p
            .r_hat
            .iter()
            .zip(&p.r)
            .map(|(rh, r)| rh - r)
            .sum::<f64>(),
    } / n;
    assert!(
        (degree - from_profile).abs() <= 1e-9,
        "degree routes disagree: trace {degree} vs profile {from_profile}"
    );
    debug_assert!(
        matrix::is_positive_semidefinite(&matrix, family.tolerance()).unwrap_or(false),
        "degree matrix must be positive semidefinite"
    );
    Ok(DegreeReport {
        kind,
        matrix,
        degree,
    })
}

/// Degree of independence: the matrix above and `eta = Tr(rho A)`.
pub fn degree_of_independence(
    family: &SubspaceFamily,
    rho: &DensityMatrix,
) -> Result<DegreeReport> {
    degree_report(family, rho, DegreeKind::Independence)
}

/// Degree of totalness: the matrix above and `epsilon = Tr(rho T)`.
pub fn degree_of_totalness(family: &SubspaceFamily, rho: &DensityMatrix) -> Result<DegreeReport> {
    degree_report(family, rho, DegreeKind::Totalness)
}

/// Outcome of comparing two families under the independence preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependenceOrder {
    /// The first family is strictly more independent (its degree matrix is
    /// dominated by the second one's).
    More,
    /// The second family is strictly more independent.
    Less,
    /// Equal degree matrices within tolerance. The families themselves may
    /// differ; the preorder has no antisymmetry.
    Equivalent,
    /// Neither difference of degree matrices is negative semidefinite.
    Incomparable,
}

/// Compare families by negative semidefiniteness of the difference of
/// their independence matrices.
pub fn compare_independence(
    first: &SubspaceFamily,
    second: &SubspaceFamily,
) -> Result<IndependenceOrder> {
    if first.ambient_dim() != second.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: first.ambient_dim(),
            right: second.ambient_dim(),
        });
    }
    let tol = first.tolerance();
    let a1 = independence_matrix(first);
    let a2 = independence_matrix(second);
    let diff = &a1 - &a2;
    let first_more = matrix::is_negative_semidefinite(&diff, tol)?;
    let second_more = matrix::is_negative_semidefinite(&diff.map(|z| -z), tol)?;
    Ok(match (first_more, second_more) {
        (true, true) => IndependenceOrder::Equivalent,
        (true, false) => IndependenceOrder::More,
        (false, true) => IndependenceOrder::Less,
        (false, false) => IndependenceOrder::Incomparable,
    })
}

/// A resolution of the identity built from the running joins of a weakly
/// total family of independent subspaces.
#[derive(Debug, Clone)]
pub struct OrthogonalExpansion {
    projectors: Vec<CMatrix>,
    components: Vec<Subspace>,
}

impl OrthogonalExpansion {
    /// Projector onto the i-th orthogonal component.
    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// The orthogonal components themselves (first equals the first
    /// family member; the last is the complement of the running join of
    /// all earlier members).
    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }
}

/// One orthogonal component of an expanded vector.
#[derive(Debug, Clone)]
pub struct VectorComponent {
    /// `|lambda_i|^2 = <v| P_i |v>`.
    pub weight: f64,
    /// `P_i |v>`.
    pub component: CVector,
}

/// Build the orthogonal expansion of a weakly total independent family.
///
/// `P_i = P(H_1 v ... v H_i) - P(H_1 v ... v H_{i-1})`; the projectors sum
/// to the identity and are mutually orthogonal. Changing the input order
/// changes the components but not these two invariants.
pub fn orthogonal_expansion(family: &SubspaceFamily) -> Result<OrthogonalExpansion> {
    let levels = independence_level(family);
    if !levels.full {
        return Err(Error::ExpansionPrecondition {
            failing: "independence",
        });
    }
    if !family.join_all().is_full() {
        return Err(Error::ExpansionPrecondition {
            failing: "weak totalness",
        });
    }

    let tol = family.tolerance();
    let d = family.ambient_dim();
    let mut projectors = Vec::with_capacity(family.len());
    let mut components = Vec::with_capacity(family.len());
    let mut running: Option<Subspace> = None;
    for member in family.members() {
        let next = match &running {
            None => member.clone(),
            Some(current) => current.join(member, tol)?,
        };
        let (projector, component) = match &running {
            None => (next.projector().clone(), next.clone()),
            Some(current) => (
                next.projector() - current.projector(),
                next.meet(&current.orthocomplement(tol), tol)?,
            ),
        };
        projectors.push(projector);
        components.push(component);
        running = Some(next);
    }

    // Resolution of the identity and mutual orthogonality.
    let mut sum = CMatrix::zeros(d, d);
    for p in &projectors {
        sum += p;
    }
    assert!(
        matrix::approx_eq(&sum, &CMatrix::identity(d, d), tol.eq_atol * (d as f64)),
        "expansion projectors do not resolve the identity"
    );
    for (i, pi) in projectors.iter().enumerate() {
        for (j, pj) in projectors.iter().enumerate() {
            let product = pi * pj;
            let expected = if i == j { pi.clone() } else { CMatrix::zeros(d, d) };
            assert!(
                matrix::approx_eq(&product, &expected, tol.eq_atol * (d as f64)),
                "expansion projectors are not mutually orthogonal"
            );
        }
    }

    Ok(OrthogonalExpansion {
        projectors,
        components,
    })
}

/// Decompose `v` along the expansion. The components sum back to `v` and
/// the weights sum to `||v||^2`.
pub fn expand_vector(
    expansion: &OrthogonalExpansion,
    v: &CVector,
) -> Result<Vec<VectorComponent>> {
    let d = expansion.projectors[0].nrows();
    if v.len() != d {
        return Err(Error::DimensionMismatch {
            context: "vector vs expansion ambient space",
            expected: d,
            found: v.len(),
        });
    }
    matrix::ensure_finite_vector(v)?;
    Ok(expansion
        .projectors
        .iter()
        .map(|p| {
            let component = p * v;
            let weight = (v.adjoint() * &component)[(0, 0)].re;
            VectorComponent { weight, component }
        })
        .collect())
}
