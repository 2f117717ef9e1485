use std::hint::black_box;

use cauchy_core::continuous::{verify_main2, RatMatrix};
use cauchy_core::identity::{kernel_series, rhs_sum, KernelSpec, Support, Variant};
use cauchy_core::{classify_low, enumerate_crystal, NNMatrix, Partition};
use criterion::{criterion_group, criterion_main, Criterion};

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("identity");
    g.sample_size(10);
    g.bench_function("kernel n3 D6", |b| {
        b.iter(|| kernel_series(black_box(&KernelSpec { n: 3, support: Support::Lower, degree: 6 })))
    });
    g.bench_function("rhs lower n3 D6", |b| b.iter(|| rhs_sum(3, black_box(6), Variant::LowerKhatK).unwrap()));
    g.bench_function("rhs staircase n3 D6", |b| b.iter(|| rhs_sum(3, black_box(6), Variant::Staircase).unwrap()));
    g.finish();
}

fn crystals(c: &mut Criterion) {
    let lambda = Partition::new(vec![3, 2, 0]).unwrap();
    c.bench_function("enumerate B(3,2,0)", |b| b.iter(|| enumerate_crystal(black_box(&lambda))));
    let matrices = NNMatrix::all_lower_triangular(3, 4);
    c.bench_function("classify all n3 s4", |b| {
        b.iter(|| matrices.iter().map(|m| classify_low(m).unwrap().w.length()).sum::<usize>())
    });
}

fn continuous(c: &mut Criterion) {
    let m = RatMatrix::parse("1/2,0,0;3/4,1/4,0;1/3,2/3,1").unwrap();
    c.bench_function("verify_main2 n3", |b| b.iter(|| verify_main2(black_box(&m)).unwrap()));
}

criterion_group!(benches, identities, crystals, continuous);
criterion_main!(benches);
