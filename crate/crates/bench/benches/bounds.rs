use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fatpoints::alpha::{cor_d_best, hr_alpha, roe_alpha};
use fatpoints::suite::{alpha_suite, tau_suite};
use fatpoints::tau::hr_tau;
use fatpoints::{
    actual_hilbert, betti_table, find_alpha, find_tau, reduce_fundamental, FatPointSpec,
    PointConfig,
};

fn z90() -> FatPointSpec {
    FatPointSpec::new(vec![90, 80, 70, 60, 50, 40, 40, 40, 30, 20, 10]).unwrap()
}

fn hilbert(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_alpha");
    for (n, m) in [(22, 3), (1000, 13), (9000, 13)] {
        let z = FatPointSpec::uniform(n, m).unwrap();
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}x{m}")),
            &z,
            |b, z| b.iter(|| find_alpha(black_box(z))),
        );
    }
    g.finish();
    let z = FatPointSpec::uniform(1000, 13).unwrap();
    c.bench_function("find_tau/1000x13", |b| b.iter(|| find_tau(black_box(&z))));
    let f = z90().class_at(400);
    c.bench_function("reduce_fundamental/z90", |b| {
        b.iter(|| reduce_fundamental(black_box(&f)))
    });
}

fn alpha_bounds(c: &mut Criterion) {
    let z = z90();
    c.bench_function("roe_alpha/z90", |b| b.iter(|| roe_alpha(black_box(&z))));
    c.bench_function("cor_d_best/z90", |b| b.iter(|| cor_d_best(black_box(&z))));
    let u = FatPointSpec::uniform(1000, 13).unwrap();
    c.bench_function("hr_alpha/1000x13", |b| {
        b.iter(|| hr_alpha(black_box(&u), 981, 31))
    });
    c.bench_function("hr_tau/1000x13", |b| {
        b.iter(|| hr_tau(black_box(&u), 981, 31))
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(20);
    let z = z90();
    g.bench_function("alpha/z90", |b| b.iter(|| alpha_suite(black_box(&z))));
    g.bench_function("tau/z90", |b| b.iter(|| tau_suite(black_box(&z))));
    let u = FatPointSpec::uniform(22, 3).unwrap();
    g.bench_function("alpha/22x3", |b| b.iter(|| alpha_suite(black_box(&u))));
    g.finish();
}

fn resolution_and_oracle(c: &mut Criterion) {
    let z = FatPointSpec::new(vec![4, 4, 4, 4, 4, 4, 4, 1]).unwrap();
    c.bench_function("betti_table/4^7,1", |b| {
        b.iter(|| betti_table(black_box(&z)))
    });
    let z = FatPointSpec::new(vec![3, 3, 3, 3, 3]).unwrap();
    let cfg = PointConfig::random(5, 1, fatpoints::DEFAULT_PRIME).unwrap();
    c.bench_function("actual_hilbert/3^5,t=8", |b| {
        b.iter(|| actual_hilbert(&cfg, black_box(&z), 8))
    });
}

criterion_group!(
    benches,
    hilbert,
    alpha_bounds,
    suites,
    resolution_and_oracle
);
criterion_main!(benches);
