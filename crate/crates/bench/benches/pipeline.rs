use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unireduce::decompose::reduce_blocks;
use unireduce::families;
use unireduce::{
    average_fixed_point, close_group, defect, monomial_eigenvector, reducibility_threshold,
    rho_eigenvector, truncate_eigenvector, Tolerance,
};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for (name, g) in [
        ("symmetric_4", families::symmetric(4)),
        ("binary_icosahedral", families::binary_icosahedral()),
        ("scaled_a5_3", families::scaled_a5(3)),
    ] {
        let gens = families::generators_of(&g.expect("closes"));
        group.bench_function(name, |b| {
            b.iter(|| close_group(black_box(&gens), Tolerance::default(), 10_000).expect("closes"))
        });
    }
    group.finish();
}

fn defects(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = families::scaled_a5(3).expect("closes");
    let xi = families::random_unit_vector(g.dim(), &mut rng);
    c.bench_function("defect/scaled_a5_3", |b| {
        b.iter(|| defect(&g, black_box(&xi)))
    });
}

fn eigenvectors(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("eigenvector");

    let s4 = families::symmetric(4).expect("closes");
    let uniform = unireduce::UnitVector::uniform(4);
    let delta = reducibility_threshold(4).sqrt() / 16.0;
    let xi = families::perturb(&uniform, delta, &mut rng);
    monomial_eigenvector(&s4, &xi).expect("below the reducibility threshold");
    group.bench_function("monomial/symmetric_4", |b| {
        b.iter(|| monomial_eigenvector(&s4, black_box(&xi)))
    });

    let w = families::random_unitary(4, &mut rng);
    let rotated = s4.conjugate_by(&w);
    let zeta = unireduce::UnitVector::new(w.apply(uniform.entries())).expect("unit");
    let xi = families::perturb(&zeta, delta, &mut rng);
    truncate_eigenvector(&rotated, &xi).expect("below the reducibility threshold");
    average_fixed_point(&rotated, &xi).expect("non-zero average");
    group.bench_function("truncate/symmetric_4_rotated", |b| {
        b.iter(|| truncate_eigenvector(&rotated, black_box(&xi)))
    });
    group.bench_function("average/symmetric_4_rotated", |b| {
        b.iter(|| average_fixed_point(&rotated, black_box(&xi)))
    });

    let a5 = families::a5_permutation().expect("closes");
    let xi = families::perturb(&unireduce::UnitVector::uniform(5), 1e-4, &mut rng);
    rho_eigenvector(&a5, &xi).expect("below the commutator threshold");
    group.bench_function("rho/a5_permutation", |b| {
        b.iter(|| rho_eigenvector(&a5, black_box(&xi)))
    });
    group.finish();
}

fn blocks(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_blocks");
    for (name, g) in [
        ("a5_permutation", families::a5_permutation()),
        ("pauli_two_qubit", families::pauli_two_qubit()),
    ] {
        let g = g.expect("closes");
        reduce_blocks(&g, 7).expect("splits");
        group.bench_function(name, |b| b.iter(|| reduce_blocks(black_box(&g), 7)));
    }
    group.finish();
}

criterion_group!(benches, closure, defects, eigenvectors, blocks);
criterion_main!(benches);
