use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use thinex_bench::product_model;
use thinex_core::{thinness_certificate, verify_telescoping};

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    group.sample_size(10);
    for depth in [2, 3, 4] {
        let (mu, fam) = product_model(depth).unwrap();
        group.bench_with_input(BenchmarkId::new("product", mu.group().order()), &(mu, fam), |b, (mu, fam)| {
            b.iter(|| thinness_certificate(black_box(fam), black_box(mu)).unwrap())
        });
    }
    group.finish();
}

fn telescoping(c: &mut Criterion) {
    let (_, fam) = product_model(4).unwrap();
    c.bench_function("telescoping depth 4", |b| b.iter(|| verify_telescoping(black_box(&fam))));
}

criterion_group!(benches, certificates, telescoping);
criterion_main!(benches);
