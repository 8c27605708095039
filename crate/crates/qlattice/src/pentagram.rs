//! The pentagram of five rank-1 projectors in `H(3)` with neighbor
//! orthogonality on a 5-cycle, and its contextuality analysis.
//!
//! Neighboring projectors commute and exclude each other, so any two
//! neighbors form a context; next-nearest projectors do not commute. A
//! noncontextual assignment of yes/no outcomes bounds the sum of the five
//! yes-probabilities by 2, while quantum states reach `5 * 0.437 = 2.185`
//! for the concrete cycle below, inside the general quantum bound of 2.5.
//!
//! Five one-dimensional subspaces like these are pairwise independent but
//! not independent: the span of any four is the whole space, which is
//! what makes a joint distribution for all five measurements impossible
//! while every per-context marginal exists.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::independence::{degree_of_independence, independence_level};
use crate::matrix::{self, CMatrix, CVector};
use crate::quasiprob::DensityMatrix;
use crate::subspace::Subspace;
use crate::tolerance::TolerancePolicy;

/// Sum of yes-probabilities achievable when a joint noncontextual
/// assignment exists.
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Sum of yes-probabilities no quantum state can exceed.
pub const QUANTUM_BOUND: f64 = 2.5;

fn real_vec(entries: [f64; 3]) -> CVector {
    CVector::from_iterator(3, entries.iter().map(|&x| Complex64::new(x, 0.0)))
}

/// The five concrete cycle states.
pub fn pentagram_states() -> [CVector; 5] {
    let s2 = 1.0 / 2f64.sqrt();
    let s3 = 1.0 / 3f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    let s5 = 1.0 / 5f64.sqrt();
    [
        real_vec([1.0, 0.0, 0.0]),
        real_vec([0.0, s2, s2]),
        real_vec([s3, s3, -s3]),
        real_vec([s6, s6, 2.0 * s6]),
        real_vec([0.0, -2.0 * s5, s5]),
    ]
}

/// The five pentagram lines as a subspace family.
pub fn pentagram_family(tol: &TolerancePolicy) -> SubspaceFamily {
    let members = pentagram_states()
        .iter()
        .map(|s| Subspace::line(s, tol).expect("pentagram states are unit vectors"))
        .collect();
    SubspaceFamily::new(members, *tol).expect("five proper lines in dimension three")
}

/// Full analysis of a pentagram cycle under one state.
#[derive(Debug, Clone)]
pub struct PentagramReport {
    /// Yes-probabilities `R(i) = Tr[rho P(H_i)]`.
    pub probabilities: [f64; 5],
    /// `sum_i R(i)`.
    pub sum: f64,
    /// `sum <= 2` (with semidefiniteness slack): a noncontextual joint
    /// assignment could explain the statistics.
    pub classical_bound_satisfied: bool,
    /// `sum <= 2.5` (with slack): holds for every quantum state.
    pub quantum_bound_satisfied: bool,
    /// Degree-of-independence matrix of the five lines; for a proper
    /// pentagram this is `(1/5) sum_i P(H_i)`.
    pub matrix: CMatrix,
    /// `eta = Tr(rho matrix)`; the normalized form of the inequality
    /// compares it against `2/5`.
    pub eta: f64,
    /// Eigenvalues of the matrix, ascending.
    pub eigenvalues: [f64; 3],
    /// Top eigenvector of `sum_i P(H_i)`: the state of maximal violation.
    pub max_violating_state: CVector,
}

fn validate_cycle(states: &[CVector; 5], tol: &TolerancePolicy) -> Result<()> {
    for (i, s) in states.iter().enumerate() {
        if s.len() != 3 {
            return Err(Error::InvalidPentagram {
                reason: format!("state {i} has dimension {}, expected 3", s.len()),
            });
        }
        matrix::ensure_finite_vector(s)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > tol.eq_atol {
            return Err(Error::InvalidPentagram {
                reason: format!("state {i} has norm {norm}, expected 1"),
            });
        }
    }
    for i in 0..5 {
        let overlap = (states[i].adjoint() * &states[(i + 1) % 5])[(0, 0)].norm();
        if overlap > tol.eq_atol {
            return Err(Error::InvalidPentagram {
                reason: format!(
                    "states {i} and {} are not orthogonal (overlap {overlap:.3e})",
                    (i + 1) % 5
                ),
            });
        }
    }
    Ok(())
}

/// Analyze an arbitrary valid 5-cycle of unit vectors in `H(3)`.
pub fn pentagram_analysis_with_states(
    states: &[CVector; 5],
    rho: &DensityMatrix,
    tol: &TolerancePolicy,
) -> Result<PentagramReport> {
    validate_cycle(states, tol)?;
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            context: "density matrix for the pentagram",
            expected: 3,
            found: rho.dim(),
        });
    }

    let members: Vec<Subspace> = states
        .iter()
        .map(|s| Subspace::line(s, tol))
        .collect::<Result<_>>()?;
    let family = SubspaceFamily::new(members, *tol)?;

    let mut probabilities = [0.0; 5];
    let mut projector_sum = CMatrix::zeros(3, 3);
    for (i, member) in family.members().iter().enumerate() {
        probabilities[i] = rho.expectation(member.projector());
        projector_sum += member.projector();
    }
    let sum: f64 = probabilities.iter().sum();

    let degree = degree_of_independence(&family, rho)?;
    let (eigenvalues, _) = matrix::hermitian_eigen(&degree.matrix, tol)?;
    let (top_values, top_vectors) = matrix::hermitian_eigen(&projector_sum, tol)?;
    debug_assert_eq!(top_values.len(), 3);
    let max_violating_state = top_vectors.column(2).into_owned();

    Ok(PentagramReport {
        probabilities,
        sum,
        classical_bound_satisfied: sum <= CLASSICAL_BOUND + tol.psd_atol,
        quantum_bound_satisfied: sum <= QUANTUM_BOUND + tol.psd_atol,
        matrix: degree.matrix,
        eta: degree.degree,
        eigenvalues: [eigenvalues[0], eigenvalues[1], eigenvalues[2]],
        max_violating_state,
    })
}

/// Analyze the concrete pentagram under `rho`.
pub fn pentagram_analysis(rho: &DensityMatrix, tol: &TolerancePolicy) -> Result<PentagramReport> {
    pentagram_analysis_with_states(&pentagram_states(), rho, tol)
}

/// The largest eigenvalue of `(1/5) sum_i P(H_i)` for the concrete
/// pentagram, with the eigenvector attaining it. Feeding the state back
/// into the analysis reproduces `sum = 5 * value`; the optimal pentagram
/// configuration in the literature reaches `sqrt(5)/5 = 0.447`, slightly
/// above this cycle's `0.437`, and is not constructed here.
pub fn max_violation(tol: &TolerancePolicy) -> (f64, CVector) {
    let family = pentagram_family(tol);
    let mut sum = CMatrix::zeros(3, 3);
    for member in family.members() {
        sum += member.projector();
    }
    let (values, vectors) = matrix::hermitian_eigen(&sum.scale(0.2), tol)
        .expect("projector sum is Hermitian");
    (values[2], vectors.column(2).into_owned())
}

/// Exclusivity structure: the five lines are pairwise independent, each
/// line's complement in the cycle spans the whole space.
pub fn pentagram_is_pairwise_only(tol: &TolerancePolicy) -> bool {
    let family = pentagram_family(tol);
    let report = independence_level(&family);
    report.pairwise && !report.full
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn states_are_unit_with_orthogonal_neighbors() {
        let states = pentagram_states();
        assert!((states[0][0].re - 1.0).abs() < 1e-15);
        for i in 0..5 {
            assert!((states[i].norm() - 1.0).abs() <= 1e-12);
            let overlap = (states[i].adjoint() * &states[(i + 1) % 5])[(0, 0)].norm();
            assert!(overlap <= 1e-12, "neighbors {i}, {} overlap {overlap}", (i + 1) % 5);
        }
    }

    #[test]
    fn any_three_states_are_independent() {
        let states = pentagram_states();
        for i in 0..5 {
            for j in (i + 1)..5 {
                for k in (j + 1)..5 {
                    let m = matrix::matrix_from_columns(&[
                        states[i].clone(),
                        states[j].clone(),
                        states[k].clone(),
                    ])
                    .unwrap();
                    assert_eq!(matrix::rank(&m, &tol()), 3);
                }
            }
        }
    }

    #[test]
    fn exclusivity_and_context_structure() {
        let family = pentagram_family(&tol());
        for i in 0..5 {
            let pi = family.member(i).unwrap().projector();
            let pj = family.member((i + 1) % 5).unwrap().projector();
            assert!((pi * pj).norm() <= 1e-12, "neighbors {i} must exclude");
            assert!(family
                .member(i)
                .unwrap()
                .commutes(family.member((i + 1) % 5).unwrap(), &tol())
                .unwrap());
            assert!(!family
                .member(i)
                .unwrap()
                .commutes(family.member((i + 2) % 5).unwrap(), &tol())
                .unwrap());
        }
    }

    #[test]
    fn pairwise_only_independence_with_full_spans() {
        assert!(pentagram_is_pairwise_only(&tol()));
        let family = pentagram_family(&tol());
        for i in 0..5 {
            assert!(family.others_join(i).unwrap().is_full());
            assert!(family.isolated_part(i).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_matrix_matches_printed_entries() {
        let family = pentagram_family(&tol());
        let a = crate::independence::independence_matrix(&family);
        // (1/5) of the projector sum, printed to two decimals.
        let expected = [
            [0.30, 0.10, 0.00],
            [0.10, 0.36, 0.02],
            [0.00, 0.02, 0.34],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert!(
                    (a[(r, c)].re - expected[r][c]).abs() <= 5e-3,
                    "entry ({r}, {c}) = {}",
                    a[(r, c)].re
                );
                assert!(a[(r, c)].im.abs() <= 1e-12);
            }
        }
        // For the pentagram the isolated parts vanish, so the degree
        // matrix is exactly the normalized projector sum.
        let mut sum = CMatrix::zeros(3, 3);
        for member in family.members() {
            sum += member.projector();
        }
        assert!(matrix::approx_eq(&a, &sum.scale(0.2), 1e-12));
    }

    #[test]
    fn eigenvalues_match_reported_spectrum() {
        let (value, state) = max_violation(&tol());
        assert!((value - 0.437).abs() <= 1e-3, "max eigenvalue {value}");
        let family = pentagram_family(&tol());
        let a = crate::independence::independence_matrix(&family);
        let values = matrix::hermitian_eigenvalues(&a, &tol()).unwrap();
        assert!((values[0] - 0.225).abs() <= 1e-3, "{values:?}");
        assert!((values[1] - 0.338).abs() <= 1e-3, "{values:?}");
        assert!((values[2] - 0.437).abs() <= 1e-3, "{values:?}");
        assert!((state.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn maximally_mixed_state_does_not_violate() {
        let rho = DensityMatrix::maximally_mixed(3);
        let report = pentagram_analysis(&rho, &tol()).unwrap();
        assert!((report.sum - 5.0 / 3.0).abs() <= 1e-12);
        assert!(report.classical_bound_satisfied);
        assert!(report.quantum_bound_satisfied);
        for p in report.probabilities {
            assert!((p - 1.0 / 3.0).abs() <= 1e-12);
        }
        assert!((report.eta - report.sum / 5.0).abs() <= 1e-12);
    }

    #[test]
    fn top_eigenvector_violates_classical_but_not_quantum_bound() {
        let (value, state) = max_violation(&tol());
        let rho = DensityMatrix::pure(&state, &tol()).unwrap();
        let report = pentagram_analysis(&rho, &tol()).unwrap();
        assert!((report.sum - 5.0 * value).abs() <= 1e-9);
        assert!((report.sum - 2.185).abs() <= 5e-3);
        assert!(!report.classical_bound_satisfied);
        assert!(report.quantum_bound_satisfied);
    }

    #[test]
    fn random_states_respect_quantum_bound() {
        let mut rng = crate::rng::SeededRng::new(2024);
        let (value, _) = max_violation(&tol());
        for _ in 0..10_000 {
            let g = CMatrix::from_fn(3, 3, |_, _| rng.complex_normal());
            let wishart = &g * g.adjoint();
            let rho = DensityMatrix::new(
                wishart.scale(1.0 / wishart.trace().re),
                &tol(),
            )
            .unwrap();
            let mut sum = 0.0;
            for state in pentagram_states() {
                let line = &state * state.adjoint();
                sum += rho.expectation(&line);
            }
            assert!(sum <= QUANTUM_BOUND + 1e-9, "sum {sum}");
            assert!(sum <= 5.0 * value + 1e-3, "spectral bound breached: {sum}");
        }
    }

    #[test]
    fn custom_cycle_validation() {
        let mut states = pentagram_states();
        states[1] = real_vec([1.0, 0.0, 0.0]);
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            pentagram_analysis_with_states(&states, &rho, &tol()),
            Err(Error::InvalidPentagram { .. })
        ));

        let not_unit = [
            real_vec([2.0, 0.0, 0.0]),
            pentagram_states()[1].clone(),
            pentagram_states()[2].clone(),
            pentagram_states()[3].clone(),
            pentagram_states()[4].clone(),
        ];
        assert!(matches!(
            pentagram_analysis_with_states(&not_unit, &rho, &tol()),
            Err(Error::InvalidPentagram { .. })
        ));
    }

    #[test]
    fn wrong_dimension_density_matrix_rejected() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            pentagram_analysis(&rho, &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
