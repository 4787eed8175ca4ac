use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subexp_core::{
    derive_spectrum, log_estimate_explicit, log_estimate_khintchine, make_preset, solve_delta,
    ModelKind,
};

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_delta");
    for kind in [ModelKind::Standard, ModelKind::Roots] {
        let sd = derive_spectrum(&make_preset(kind).unwrap(), 8).unwrap();
        for n in [1_000u64, 1_000_000] {
            group.bench_with_input(BenchmarkId::new(kind.to_string(), n), &n, |b, &n| {
                b.iter(|| solve_delta(&sd, black_box(n)).unwrap())
            });
        }
    }
    group.finish();
}

fn estimates(c: &mut Criterion) {
    let sd = derive_spectrum(&make_preset(ModelKind::Roots).unwrap(), 8).unwrap();
    c.bench_function("log_estimate_explicit/roots", |b| {
        b.iter(|| log_estimate_explicit(&sd, black_box(10_000)).unwrap())
    });
    c.bench_function("log_estimate_khintchine/roots", |b| {
        b.iter(|| log_estimate_khintchine(&sd, black_box(10_000)).unwrap())
    });
}

criterion_group!(benches, solver, estimates);
criterion_main!(benches);
