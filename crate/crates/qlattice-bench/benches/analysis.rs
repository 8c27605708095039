use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use qlattice::matrix::CVector;
use qlattice::phase_space::{FiniteSystem, DEFAULT_FIDUCIAL_SEED};
use qlattice::quasiprob::DensityMatrix;
use qlattice::report::analyze;
use qlattice::rng::SeededRng;
use qlattice::sampling::{random_density_matrix, random_proper_subspace};
use qlattice::subspace::Subspace;
use qlattice::tolerance::TolerancePolicy;
use qlattice::{Complex64, SubspaceFamily};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn span(d: usize, vecs: &[&[f64]]) -> Subspace {
    let vectors: Vec<CVector> = vecs
        .iter()
        .map(|entries| CVector::from_iterator(d, entries.iter().map(|&x| Complex64::new(x, 0.0))))
        .collect();
    Subspace::from_spanning(&vectors, &tol()).unwrap()
}

fn golden_independence_family() -> SubspaceFamily {
    SubspaceFamily::new(
        vec![
            span(6, &[&[1., 0., 0., 0., 0., 0.], &[0., 1., 0., 0., 0., 0.]]),
            span(6, &[&[0., 0., 1., 0., 0., 0.], &[0., 0., 0., 1., 0., 0.]]),
            span(6, &[&[0., 1., 0., 0., 1., 0.], &[0., 0., 0., 0., 0., 1.]]),
        ],
        tol(),
    )
    .unwrap()
}

fn bench_lattice_ops(c: &mut Criterion) {
    let tol = tol();
    let mut rng = SeededRng::new(77);
    let a = random_proper_subspace(6, &mut rng, &tol);
    let b = random_proper_subspace(6, &mut rng, &tol);
    c.bench_function("meet_d6", |bencher| {
        bencher.iter(|| a.meet(&b, &tol).unwrap())
    });
    c.bench_function("join_d6", |bencher| {
        bencher.iter(|| a.join(&b, &tol).unwrap())
    });
}

fn bench_golden_analysis(c: &mut Criterion) {
    let tol = tol();
    let rho = DensityMatrix::pure(
        &CVector::from_iterator(
            6,
            [1.0, 1.0, 0.0, 2.0, 0.0, 1.0]
                .iter()
                .map(|&x| Complex64::new(x, 0.0)),
        ),
        &tol,
    )
    .unwrap();
    c.bench_function("analyze_golden_h6", |bencher| {
        bencher.iter_batched(
            golden_independence_family,
            |family| analyze(&family, &rho).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_pentagram(c: &mut Criterion) {
    let tol = tol();
    let rho = DensityMatrix::maximally_mixed(3);
    c.bench_function("pentagram_analysis", |bencher| {
        bencher.iter(|| qlattice::pentagram::pentagram_analysis(&rho, &tol).unwrap())
    });
}

fn bench_coherent_classification(c: &mut Criterion) {
    let tol = tol();
    let sys = FiniteSystem::with_seeded_fiducial(5, DEFAULT_FIDUCIAL_SEED, &tol).unwrap();
    let mut rng = SeededRng::new(99);
    let rho = random_density_matrix(5, &mut rng, &tol);
    c.bench_function("analyze_coherent_d5", |bencher| {
        bencher.iter_batched(
            || sys.coherent_family(&tol).unwrap(),
            |family| analyze(&family, &rho).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_lattice_ops,
    bench_golden_analysis,
    bench_pentagram,
    bench_coherent_classification
);
criterion_main!(benches);
