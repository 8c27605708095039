//! Finite quantum systems with variables in the integers modulo `d`:
//! position and momentum bases, the finite Fourier transform, displacement
//! operators over the `Z(d) x Z(d)` phase space, coherent-state families,
//! and the builders that package these as subspace families.
//!
//! Displacement operators need the element `2^-1` of `Z(d)`, which exists
//! only for odd `d`; construction rejects even dimensions up front.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::matrix::{self, CMatrix, CVector};
use crate::rng::SeededRng;
use crate::subspace::Subspace;
use crate::tolerance::TolerancePolicy;

/// Seed of the fiducial vector used when the caller does not supply one.
pub const DEFAULT_FIDUCIAL_SEED: u64 = 1;

/// `exp(2 pi i k / d)` with `k` reduced modulo `d`.
fn omega(d: usize, k: i64) -> Complex64 {
    let r = k.rem_euclid(d as i64) as f64;
    let angle = 2.0 * std::f64::consts::PI * r / d as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// Modular inverse by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(modulus as i128) as u64)
}

/// The unitary finite Fourier matrix `F[a][b] = omega(a b) / sqrt(d)`,
/// whose columns are the momentum basis states.
pub fn fourier_matrix(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    let scale = 1.0 / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, d, |a, b| {
        omega(d, (a * b) as i64) * scale
    }))
}

/// A system of odd dimension with a generic fiducial vector.
#[derive(Debug, Clone)]
pub struct FiniteSystem {
    d: usize,
    fiducial: CVector,
    half_inverse: u64,
}

impl FiniteSystem {
    /// Build a system from an explicit fiducial vector. The vector must be
    /// normalized and generic: the `d x d^2` matrix of coherent amplitudes
    /// must have full rank, which makes any `d` of the `d^2` coherent
    /// states linearly independent.
    pub fn new(d: usize, fiducial: CVector, tol: &TolerancePolicy) -> Result<Self> {
        if d < 3 {
            return Err(Error::DimensionTooSmall { d, min: 3 });
        }
        if d.is_multiple_of(2) {
            return Err(Error::EvenDimension { d });
        }
        if fiducial.len() != d {
            return Err(Error::DimensionMismatch {
                context: "fiducial vector",
                expected: d,
                found: fiducial.len(),
            });
        }
        matrix::ensure_finite_vector(&fiducial)?;
        let norm = fiducial.norm();
        if (norm - 1.0).abs() > tol.eq_atol {
            return Err(Error::FiducialNotUnit { norm });
        }
        let half_inverse = mod_inverse(2, d as u64).expect("odd modulus has an inverse of 2");
        let system = Self {
            d,
            fiducial,
            half_inverse,
        };
        system.check_genericity(tol)?;
        Ok(system)
    }

    /// Genericity of the fiducial. The full amplitude matrix always has
    /// rank `d` (its Gram is `d` times the identity by the resolution of
    /// the identity), so the check that actually bites is pairwise
    /// non-parallelism of the coherent states: a basis-state fiducial,
    /// for example, collapses whole phase-space rows onto single lines.
    fn check_genericity(&self, tol: &TolerancePolicy) -> Result<()> {
        let d = self.d;
        let amplitudes = self.coherent_amplitude_matrix();
        let amplitude_rank = matrix::rank(&amplitudes, tol);
        if amplitude_rank < d {
            return Err(Error::FiducialNotGeneric {
                reason: format!("coherent amplitude matrix has rank {amplitude_rank} < {d}"),
            });
        }
        let n = d * d;
        for i in 0..n {
            for j in (i + 1)..n {
                let overlap = (amplitudes.column(i).adjoint() * amplitudes.column(j))[(0, 0)];
                if overlap.norm() >= 1.0 - tol.eq_atol {
                    return Err(Error::FiducialNotGeneric {
                        reason: format!(
                            "coherent states ({}, {}) and ({}, {}) are parallel",
                            i / d,
                            i % d,
                            j / d,
                            j % d
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Build a system with a seeded pseudo-random normalized fiducial.
    /// Fails when the sampled vector is not generic; the caller may retry
    /// with a different seed.
    pub fn with_seeded_fiducial(d: usize, seed: u64, tol: &TolerancePolicy) -> Result<Self> {
        if d < 3 {
            return Err(Error::DimensionTooSmall { d, min: 3 });
        }
        if d.is_multiple_of(2) {
            return Err(Error::EvenDimension { d });
        }
        let mut rng = SeededRng::new(seed);
        let raw = CVector::from_fn(d, |_, _| rng.complex_normal());
        let norm = raw.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Self::new(d, raw.map(|z| z / norm), tol)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn fiducial(&self) -> &CVector {
        &self.fiducial
    }

    /// The displacement operator `D(a, b) = Z^a X^b omega(-2^-1 a b)`,
    /// with `Z` the modulation and `X` the cyclic shift of the position
    /// basis.
    pub fn displacement(&self, alpha: i64, beta: i64) -> CMatrix {
        let d = self.d;
        let a = alpha.rem_euclid(d as i64);
        let b = beta.rem_euclid(d as i64);
        let phase = omega(d, -((self.half_inverse as i64) * a * b));
        let mut out = CMatrix::zeros(d, d);
        for col in 0..d {
            let row = (col + b as usize) % d;
            out[(row, col)] = omega(d, a * row as i64) * phase;
        }
        out
    }

    /// The coherent state `D(a, b) |f>` through the closed-form
    /// amplitudes `omega(a m - 2^-1 a b) f_{m-b}`.
    pub fn coherent_state(&self, alpha: i64, beta: i64) -> CVector {
        let d = self.d;
        let a = alpha.rem_euclid(d as i64);
        let b = beta.rem_euclid(d as i64);
        let half = self.half_inverse as i64;
        CVector::from_fn(d, |m, _| {
            let source = (m as i64 - b).rem_euclid(d as i64) as usize;
            omega(d, a * m as i64 - half * a * b) * self.fiducial[source]
        })
    }

    /// The `d x d^2` matrix of coherent amplitudes, columns ordered
    /// row-major in `(a, b)`.
    pub fn coherent_amplitude_matrix(&self) -> CMatrix {
        let d = self.d;
        let mut out = CMatrix::zeros(d, d * d);
        for a in 0..d {
            for b in 0..d {
                out.set_column(a * d + b, &self.coherent_state(a as i64, b as i64));
            }
        }
        out
    }

    /// The family of the `d^2` coherent lines, ordered row-major in
    /// `(a, b)`.
    pub fn coherent_family(&self, tol: &TolerancePolicy) -> Result<SubspaceFamily> {
        let mut members = Vec::with_capacity(self.d * self.d);
        for a in 0..self.d {
            for b in 0..self.d {
                members.push(Subspace::line(
                    &self.coherent_state(a as i64, b as i64),
                    tol,
                )?);
            }
        }
        SubspaceFamily::new(members, *tol)
    }
}

/// The family of the `d` position lines.
pub fn position_family(d: usize, tol: &TolerancePolicy) -> Result<SubspaceFamily> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    let members = (0..d)
        .map(|i| {
            let mut v = CVector::zeros(d);
            v[i] = Complex64::new(1.0, 0.0);
            Subspace::line(&v, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    SubspaceFamily::new(members, *tol)
}

/// The family of the `d` position lines followed by the `d` momentum
/// lines (indices `0..d` are positions, `d..2d` momenta).
pub fn position_momentum_family(d: usize, tol: &TolerancePolicy) -> Result<SubspaceFamily> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    let fourier = fourier_matrix(d)?;
    let mut members = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut v = CVector::zeros(d);
        v[i] = Complex64::new(1.0, 0.0);
        members.push(Subspace::line(&v, tol)?);
    }
    for i in 0..d {
        members.push(Subspace::line(&fourier.column(i).into_owned(), tol)?);
    }
    SubspaceFamily::new(members, *tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn mod_inverse_extended_euclid() {
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(2, 7), Some(4));
        assert_eq!(mod_inverse(2, 4), None);
        for d in [3u64, 5, 7, 9, 11, 101] {
            let inv = mod_inverse(2, d).unwrap();
            assert_eq!((2 * inv) % d, 1, "2^-1 mod {d}");
        }
    }

    #[test]
    fn fourier_matrix_small_cases() {
        let f2 = fourier_matrix(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((f2[(0, 0)].re - s).abs() < 1e-15);
        assert!((f2[(1, 1)].re + s).abs() < 1e-15);

        let f3 = fourier_matrix(3).unwrap();
        for b in 0..3 {
            assert!((f3[(0, b)] - Complex64::new(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        assert!(matches!(fourier_matrix(1), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn fourier_unitary_up_to_dimension_twelve() {
        for d in 2..=12 {
            let f = fourier_matrix(d).unwrap();
            let gram = f.adjoint() * &f;
            assert!(
                matrix::approx_eq(&gram, &CMatrix::identity(d, d), 1e-12),
                "Fourier gram deviates for d = {d}"
            );
        }
    }

    #[test]
    fn even_dimension_rejected() {
        let err = FiniteSystem::with_seeded_fiducial(4, DEFAULT_FIDUCIAL_SEED, &tol());
        assert!(matches!(err, Err(Error::EvenDimension { d: 4 })));
        let msg = err.unwrap_err().to_string();
        assert!(msg.contains("odd"), "error should name the odd-dimension requirement: {msg}");
    }

    #[test]
    fn displacement_identity_and_generators() {
        let sys = FiniteSystem::with_seeded_fiducial(3, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
        let id = sys.displacement(0, 0);
        assert!(matrix::approx_eq(&id, &CMatrix::identity(3, 3), 1e-14));

        // D(1, 0) is the modulation Z = diag(1, w, w^2).
        let z = sys.displacement(1, 0);
        for m in 0..3 {
            assert!((z[(m, m)] - omega(3, m as i64)).norm() < 1e-14);
        }
        // D(0, 1) is the cyclic shift X.
        let x = sys.displacement(0, 1);
        for m in 0..3 {
            assert!((x[((m + 1) % 3, m)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn displacements_are_unitary() {
        let sys = FiniteSystem::with_seeded_fiducial(5, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let dd = sys.displacement(a, b);
                let gram = dd.adjoint() * &dd;
                assert!(matrix::approx_eq(&gram, &CMatrix::identity(5, 5), 1e-12));
            }
        }
    }

    #[test]
    fn coherent_state_matches_displacement_route() {
        for d in [3usize, 5, 7] {
            let sys = FiniteSystem::with_seeded_fiducial(d, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
            for a in 0..d as i64 {
                for b in 0..d as i64 {
                    let closed = sys.coherent_state(a, b);
                    let displaced = sys.displacement(a, b) * sys.fiducial();
                    assert!(
                        (closed.clone() - displaced).norm() < 1e-12,
                        "closed form vs displaced fiducial at ({a}, {b}), d = {d}"
                    );
                    assert!((closed.norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn coherent_states_at_origin_reproduce_fiducial() {
        let sys = FiniteSystem::with_seeded_fiducial(5, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
        assert!((sys.coherent_state(0, 0) - sys.fiducial()).norm() < 1e-15);
    }

    #[test]
    fn coherent_resolution_of_identity() {
        for d in [3usize, 5, 7] {
            let sys = FiniteSystem::with_seeded_fiducial(d, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
            let mut sum = CMatrix::zeros(d, d);
            for a in 0..d as i64 {
                for b in 0..d as i64 {
                    let state = sys.coherent_state(a, b);
                    sum += &state * state.adjoint();
                }
            }
            sum = sum.scale(1.0 / d as f64);
            assert!(
                matrix::approx_eq(&sum, &CMatrix::identity(d, d), 1e-9),
                "coherent resolution of identity fails for d = {d}"
            );
        }
    }

    #[test]
    fn generic_fiducial_amplitude_rank() {
        let sys = FiniteSystem::with_seeded_fiducial(5, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
        assert_eq!(matrix::rank(&sys.coherent_amplitude_matrix(), &tol()), 5);
    }

    #[test]
    fn basis_state_fiducial_rejected_as_non_generic() {
        // All coherent states of a position basis state stay on basis
        // lines, so whole phase-space rows are parallel.
        let mut f = CVector::zeros(3);
        f[0] = Complex64::new(1.0, 0.0);
        let err = FiniteSystem::new(3, f, &tol());
        assert!(matches!(err, Err(Error::FiducialNotGeneric { .. })));
        let msg = err.unwrap_err().to_string();
        assert!(msg.contains("parallel"), "{msg}");
    }

    #[test]
    fn default_fiducial_makes_any_three_coherent_states_independent() {
        // Stronger than the rank check on the full amplitude matrix: for
        // the default fiducial in d = 3, every one of the 84 triples of
        // coherent states has rank 3.
        let sys = FiniteSystem::with_seeded_fiducial(3, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
        let states: Vec<CVector> = (0..9)
            .map(|i| sys.coherent_state((i / 3) as i64, (i % 3) as i64))
            .collect();
        for i in 0..9 {
            for j in (i + 1)..9 {
                for k in (j + 1)..9 {
                    let m = matrix::matrix_from_columns(&[
                        states[i].clone(),
                        states[j].clone(),
                        states[k].clone(),
                    ])
                    .unwrap();
                    assert_eq!(matrix::rank(&m, &tol()), 3, "triple ({i}, {j}, {k})");
                }
            }
        }
    }

    #[test]
    fn position_projectors_resolve_identity() {
        for d in [3usize, 5] {
            let family = position_family(d, &tol()).unwrap();
            let mut sum = CMatrix::zeros(d, d);
            for member in family.members() {
                sum += member.projector();
            }
            assert!(matrix::approx_eq(&sum, &CMatrix::identity(d, d), 1e-12));
        }
    }

    #[test]
    fn momentum_projectors_resolve_identity() {
        let d = 5;
        let family = position_momentum_family(d, &tol()).unwrap();
        let mut sum = CMatrix::zeros(d, d);
        for member in &family.members()[d..] {
            sum += member.projector();
        }
        assert!(matrix::approx_eq(&sum, &CMatrix::identity(d, d), 1e-12));
    }

    #[test]
    fn family_sizes_and_orderings() {
        let d = 3;
        assert_eq!(position_family(d, &tol()).unwrap().len(), d);
        let pm = position_momentum_family(d, &tol()).unwrap();
        assert_eq!(pm.len(), 2 * d);
        // position members come first
        let mut e0 = CVector::zeros(d);
        e0[0] = Complex64::new(1.0, 0.0);
        assert!(pm
            .member(0)
            .unwrap()
            .approx_eq(&Subspace::line(&e0, &tol()).unwrap(), &tol()));
        let sys = FiniteSystem::with_seeded_fiducial(d, DEFAULT_FIDUCIAL_SEED, &tol()).unwrap();
        assert_eq!(sys.coherent_family(&tol()).unwrap().len(), d * d);
        assert!(matches!(
            position_family(2, &tol()),
            Err(Error::DimensionTooSmall { .. })
        ));
    }
}
