use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use liebi::catalog::{lorentzian_2plus1, lorentzian_3plus1};
use liebi::duality::{full_support, generic_r_analysis};
use liebi::scalar::Context;
use liebi::tensor::schouten_square;
use liebi_bench::gcd_workload;

fn schouten_3plus1(c: &mut Criterion) {
    let e = lorentzian_3plus1();
    c.bench_function("schouten_square 3+1", |b| {
        b.iter(|| schouten_square(black_box(&e.algebra), black_box(&e.r)).unwrap())
    });
}

fn generic_r_2plus1(c: &mut Criterion) {
    let e = lorentzian_2plus1();
    let support = full_support(e.algebra.dim());
    c.bench_function("generic_r_analysis 2+1", |b| {
        b.iter(|| generic_r_analysis(black_box(&e.algebra), &e.splitting, &support, &e.special).unwrap())
    });
}

fn scalar_gcd(c: &mut Criterion) {
    let ctx = Context::new(["Lambda", "z"]).unwrap();
    let (num, den) = gcd_workload(&ctx);
    c.bench_function("rational function normalization", |b| {
        b.iter(|| black_box(&num).try_div(black_box(&den)).unwrap())
    });
}

criterion_group!(benches, schouten_3plus1, generic_r_2plus1, scalar_gcd);
criterion_main!(benches);
