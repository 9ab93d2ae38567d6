use cigon_bench::{codim2_replay, hilbert_case, surface_replay};
use cigon_core::exactnum::{log_enclosure, power_enclosure, rat, Integer};
use cigon_core::hilbert::{h0_ci_koszul, h0_ci_nested, h0_series_oracle};
use cigon_core::neffeas::{verify_induction, InductionOptions};
use cigon_core::primesel::{ramanujan_prime, select_prime_degrees};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn hilbert(c: &mut Criterion) {
    let (spec, twist) = hilbert_case();
    let mut group = c.benchmark_group("hilbert");
    group.bench_function("koszul", |b| b.iter(|| h0_ci_koszul(black_box(&spec), twist)));
    group.bench_function("nested", |b| b.iter(|| h0_ci_nested(black_box(&spec), twist)));
    group.bench_function("series", |b| b.iter(|| h0_series_oracle(black_box(&spec), twist)));
    group.finish();
}

fn enclosures(c: &mut Criterion) {
    let base = Integer::from(1234);
    c.bench_function("power 3/2 at 40 digits", |b| {
        b.iter(|| power_enclosure(black_box(&base), 3, 2, 40))
    });
    c.bench_function("log at 30 digits", |b| {
        b.iter(|| log_enclosure(black_box(&rat(12, 1)), 30))
    });
}

fn primes(c: &mut Criterion) {
    c.bench_function("ramanujan R_20", |b| b.iter(|| ramanujan_prime(black_box(20))));
    c.bench_function("select e=4", |b| {
        b.iter(|| select_prime_degrees(4, black_box(&[4000, 5000, 6000])))
    });
}

fn induction(c: &mut Criterion) {
    let opts = InductionOptions::default();
    let mut group = c.benchmark_group("verify_induction");
    group.sample_size(10);
    let codim2 = codim2_replay();
    group.bench_function("codim2 (24, 30)", |b| b.iter(|| verify_induction(black_box(&codim2), &opts)));
    let surface = surface_replay();
    group.bench_function("surface (264, 312, 600)", |b| {
        b.iter(|| verify_induction(black_box(&surface), &opts))
    });
    group.finish();
}

criterion_group!(benches, hilbert, enclosures, primes, induction);
criterion_main!(benches);
