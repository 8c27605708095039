//! Reproducible random subspaces, families, and states.
//!
//! Deterministic given the caller's [`SeededRng`]; used by the default
//! fiducial construction and by the verification corpora.

use crate::family::SubspaceFamily;
use crate::matrix::{self, CMatrix, CVector};
use crate::quasiprob::DensityMatrix;
use crate::rng::SeededRng;
use crate::subspace::Subspace;
use crate::tolerance::TolerancePolicy;

/// Haar-ish random unit vector from complex normal components.
pub fn random_unit_vector(d: usize, rng: &mut SeededRng) -> CVector {
    loop {
        let v = CVector::from_fn(d, |_, _| rng.complex_normal());
        let norm = v.norm();
        if norm > 1e-6 {
            return v.map(|z| z / norm);
        }
    }
}

/// Random subspace of the given dimension.
pub fn random_subspace(d: usize, k: usize, rng: &mut SeededRng, tol: &TolerancePolicy) -> Subspace {
    assert!(k <= d);
    if k == 0 {
        return Subspace::zero(d);
    }
    loop {
        let g = CMatrix::from_fn(d, k, |_, _| rng.complex_normal());
        if matrix::rank(&g, tol) == k {
            return Subspace::from_spanning_matrix(&g, tol).expect("finite random entries");
        }
    }
}

/// Random proper subspace (dimension uniform in `1..d`).
pub fn random_proper_subspace(d: usize, rng: &mut SeededRng, tol: &TolerancePolicy) -> Subspace {
    assert!(d >= 2);
    let k = rng.range(1, d);
    random_subspace(d, k, rng, tol)
}

/// Random density matrix (normalized Wishart), full rank almost surely.
pub fn random_density_matrix(d: usize, rng: &mut SeededRng, tol: &TolerancePolicy) -> DensityMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| rng.complex_normal());
    let wishart = &g * g.adjoint();
    let trace = wishart.trace().re;
    DensityMatrix::new(wishart.scale(1.0 / trace), tol).expect("normalized Wishart is a state")
}

/// Family of `n` random proper subspaces.
pub fn random_family(
    d: usize,
    n: usize,
    rng: &mut SeededRng,
    tol: &TolerancePolicy,
) -> SubspaceFamily {
    let members = (0..n)
        .map(|_| random_proper_subspace(d, rng, tol))
        .collect();
    SubspaceFamily::new(members, *tol).expect("random proper members form a family")
}

/// Split `total` into `parts` positive summands.
fn random_composition(total: usize, parts: usize, rng: &mut SeededRng) -> Vec<usize> {
    assert!(parts >= 1 && total >= parts);
    let mut sizes = vec![1usize; parts];
    for _ in 0..(total - parts) {
        let i = rng.range(0, parts);
        sizes[i] += 1;
    }
    sizes
}

/// Fully independent family: the columns of a random full-rank `d x m`
/// matrix split into `n` groups (`n <= m <= d`, all groups proper).
pub fn random_independent_family(
    d: usize,
    n: usize,
    rng: &mut SeededRng,
    tol: &TolerancePolicy,
) -> SubspaceFamily {
    assert!(n >= 2 && n <= d);
    let m = rng.range(n, d + 1);
    // Each group must stay proper, so a single group may not take all of d.
    let sizes = loop {
        let sizes = random_composition(m, n, rng);
        if sizes.iter().all(|&k| k < d) {
            break sizes;
        }
    };
    let g = loop {
        let g = CMatrix::from_fn(d, m, |_, _| rng.complex_normal());
        if matrix::rank(&g, tol) == m {
            break g;
        }
    };
    let mut members = Vec::with_capacity(n);
    let mut offset = 0;
    for &k in &sizes {
        let block = g.columns(offset, k).into_owned();
        members.push(Subspace::from_spanning_matrix(&block, tol).expect("finite block"));
        offset += k;
    }
    SubspaceFamily::new(members, *tol).expect("independent groups form a family")
}

/// Independent family whose members jointly span the whole space
/// (weakly total by construction).
pub fn random_spanning_independent_family(
    d: usize,
    n: usize,
    rng: &mut SeededRng,
    tol: &TolerancePolicy,
) -> SubspaceFamily {
    assert!(n >= 2 && n <= d);
    let sizes = loop {
        let sizes = random_composition(d, n, rng);
        if sizes.iter().all(|&k| k < d) {
            break sizes;
        }
    };
    let g = loop {
        let g = CMatrix::from_fn(d, d, |_, _| rng.complex_normal());
        if matrix::rank(&g, tol) == d {
            break g;
        }
    };
    let mut members = Vec::with_capacity(n);
    let mut offset = 0;
    for &k in &sizes {
        let block = g.columns(offset, k).into_owned();
        members.push(Subspace::from_spanning_matrix(&block, tol).expect("finite block"));
        offset += k;
    }
    SubspaceFamily::new(members, *tol).expect("spanning groups form a family")
}

/// Family of pairwise-commuting subspaces: members are spans of subsets
/// of the columns of one random unitary.
pub fn random_commuting_family(
    d: usize,
    n: usize,
    rng: &mut SeededRng,
    tol: &TolerancePolicy,
) -> SubspaceFamily {
    assert!(d >= 2 && n >= 2);
    let unitary = loop {
        let g = CMatrix::from_fn(d, d, |_, _| rng.complex_normal());
        let q = matrix::orthonormalize_columns(&g, tol);
        if q.ncols() == d {
            break q;
        }
    };
    let members = (0..n)
        .map(|_| {
            let k = rng.range(1, d);
            // Choose k distinct column indices.
            let mut picked = Vec::with_capacity(k);
            while picked.len() < k {
                let idx = rng.range(0, d);
                if !picked.contains(&idx) {
                    picked.push(idx);
                }
            }
            let cols: Vec<CVector> = picked.iter().map(|&i| unitary.column(i).into_owned()).collect();
            Subspace::from_spanning(&cols, tol).expect("unitary columns are finite")
        })
        .collect();
    SubspaceFamily::new(members, *tol).expect("commuting members form a family")
}
