use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subexp_core::{exact_coefficients, make_preset, pentagonal_oracle, product_dp, ModelKind};

fn recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_coefficients");
    group.sample_size(10);
    for kind in [ModelKind::Standard, ModelKind::Roots] {
        let model = make_preset(kind).unwrap();
        for order in [250usize, 1000] {
            group.bench_with_input(BenchmarkId::new(kind.to_string(), order), &order, |b, &n| {
                b.iter(|| exact_coefficients(black_box(&model), n).unwrap())
            });
        }
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    group.bench_function("pentagonal/2000", |b| b.iter(|| pentagonal_oracle(black_box(2000))));
    let roots = make_preset(ModelKind::Roots).unwrap();
    group.bench_function("product_dp/roots/500", |b| b.iter(|| product_dp(&roots, black_box(500))));
    group.finish();
}

criterion_group!(benches, recurrence, oracles);
criterion_main!(benches);
