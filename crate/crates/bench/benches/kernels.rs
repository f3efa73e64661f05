use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use shiftlab_core::counterexample;
use shiftlab_core::gin::{phi_image_matrix, random_gl};
use shiftlab_core::{
    gin, hochster_betti, random_complex, shift_to_shifted, shifted_betti, GinOptions, PrimeField, SimplicialComplex,
    Strategy,
};

fn sample(n: usize) -> SimplicialComplex {
    random_complex(n, 0.1, 42).unwrap()
}

fn elimination(c: &mut Criterion) {
    let field = PrimeField::new(32003).unwrap();
    let mut group = c.benchmark_group("elimination");
    for n in [8, 10, 12] {
        let complex = random_complex(n, 0.02, 42).unwrap();
        let phi = random_gl(n, field, 1);
        // the degree with the largest ideal slice
        let image = (1..=n)
            .map(|d| phi_image_matrix(&complex, d, &phi))
            .max_by_key(|m| m.matrix.rows() * m.matrix.cols())
            .unwrap();
        let id = format!("n{n}_{}x{}", image.matrix.rows(), image.matrix.cols());
        group.bench_with_input(BenchmarkId::new("rank", id), &image.matrix, |b, m| b.iter(|| black_box(m.rank())));
    }
    group.finish();
}

fn betti(c: &mut Criterion) {
    let field = PrimeField::new(32003).unwrap();
    let mut group = c.benchmark_group("betti");
    for n in [6, 8, 10] {
        let complex = sample(n);
        group.bench_with_input(BenchmarkId::new("hochster", n), &complex, |b, x| b.iter(|| hochster_betti(x, field)));
        let shifted = shift_to_shifted(&complex, Strategy::Sweep).unwrap().0;
        group.bench_with_input(BenchmarkId::new("formula", n), &shifted, |b, x| b.iter(|| shifted_betti(x).unwrap()));
    }
    group.finish();
}

fn shift(c: &mut Criterion) {
    let mut group = c.benchmark_group("shift");
    for n in [8, 12, 16] {
        let complex = sample(n);
        group.bench_with_input(BenchmarkId::new("sweep", n), &complex, |b, x| {
            b.iter(|| shift_to_shifted(x, Strategy::Sweep).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("random", n), &complex, |b, x| {
            b.iter(|| shift_to_shifted(x, Strategy::Random(5)).unwrap())
        });
    }
    let target = counterexample::build();
    group.sample_size(10);
    group.bench_function("classify_15_vertex", |b| {
        b.iter(|| counterexample::enumerate_and_classify(&target, 1_000_000).unwrap())
    });
    group.finish();
}

fn exterior(c: &mut Criterion) {
    let mut group = c.benchmark_group("gin");
    group.sample_size(10);
    for n in [6, 8, 10] {
        let complex = sample(n);
        let options = GinOptions { prime: 32003, seed: 3, retries: 3 };
        group.bench_with_input(BenchmarkId::from_parameter(n), &complex, |b, x| b.iter(|| gin(x, options).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, elimination, betti, shift, exterior);
criterion_main!(benches);
