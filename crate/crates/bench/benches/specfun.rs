use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use subexp_core::hp::set_precision_digits;
use subexp_core::specfun::{hurwitz_zeta, hurwitz_zeta_deriv0, log_gamma, riemann_zeta};
use subexp_core::RealHP;

fn zeta(c: &mut Criterion) {
    c.bench_function("riemann_zeta(3)", |b| b.iter(|| riemann_zeta(black_box(3.0)).unwrap()));
    c.bench_function("riemann_zeta(-7)", |b| b.iter(|| riemann_zeta(black_box(-7.0)).unwrap()));
    let q = RealHP::ratio(1, 3);
    c.bench_function("hurwitz_zeta(2.5, 1/3)", |b| {
        b.iter(|| hurwitz_zeta(black_box(2.5), q.clone()).unwrap())
    });
    c.bench_function("hurwitz_zeta_deriv0(1/3)", |b| {
        b.iter(|| hurwitz_zeta_deriv0(black_box(q.clone())).unwrap())
    });
    c.bench_function("log_gamma(1/3)", |b| b.iter(|| log_gamma(black_box(q.clone())).unwrap()));
}

fn high_precision(c: &mut Criterion) {
    set_precision_digits(200).unwrap();
    c.bench_function("riemann_zeta(3) at 200 digits", |b| {
        b.iter(|| riemann_zeta(black_box(3.0)).unwrap())
    });
    set_precision_digits(38).unwrap();
}

criterion_group!(benches, zeta, high_precision);
criterion_main!(benches);
