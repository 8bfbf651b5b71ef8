use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use koszul_bench::{presentation, session, FIRST_EXAMPLE, QUANTUM_EXTERIOR, RADICAL_SQUARE_ZERO};
use koszul_core::hochschild::cohomology_dims;
use koszul_core::koszul_dual::graded_centre;
use koszul_core::Session;

fn resolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution");
    for maxdeg in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::new("quantum_exterior", maxdeg), &maxdeg, |b, &d| {
            b.iter(|| Session::new(presentation(QUANTUM_EXTERIOR, d)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("radical_square_zero", maxdeg), &maxdeg, |b, &d| {
            b.iter(|| Session::new(presentation(RADICAL_SQUARE_ZERO, d)).unwrap())
        });
    }
    group.finish();
}

fn comultiplication(c: &mut Criterion) {
    let mut group = c.benchmark_group("comultiplication");
    for maxdeg in [4, 6] {
        group.bench_with_input(BenchmarkId::new("quantum_exterior", maxdeg), &maxdeg, |b, &d| {
            b.iter_with_setup(|| session(QUANTUM_EXTERIOR, d), |s| black_box(s.full_table().unwrap()))
        });
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    c.bench_function("hh_quantum_exterior_degree_4", |b| {
        b.iter_with_setup(
            || session(QUANTUM_EXTERIOR, 5),
            |s| (0..4).map(|w| cohomology_dims(&s, 4, w).unwrap().dim_hh).sum::<usize>(),
        )
    });
    c.bench_function("hh_first_example_degree_3", |b| {
        b.iter_with_setup(
            || session(FIRST_EXAMPLE, 5),
            |s| (0..5).map(|w| cohomology_dims(&s, 3, w).unwrap().dim_hh).sum::<usize>(),
        )
    });
}

fn centre(c: &mut Criterion) {
    c.bench_function("graded_centre_quantum_exterior_degree_4", |b| {
        b.iter_with_setup(|| session(QUANTUM_EXTERIOR, 5), |s| graded_centre(&s, 4).unwrap().dim())
    });
}

criterion_group!(benches, resolution, comultiplication, cohomology, centre);
criterion_main!(benches);
