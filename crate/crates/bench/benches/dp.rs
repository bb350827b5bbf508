//! Criterion benchmarks for the sumset dynamic programs.
//!
//! `restricted_signed/k40_h20_max1000` is the documented performance
//! target: it must complete in well under a second per iteration.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use sumset_bench::{irregular_set, performance_target_set};
use sumset_core::search::{verify_direct, Constraint, SearchConfig};
use sumset_core::sumset::{restricted_signed_sumset, restricted_signed_sumset_oracle_with_budget};

fn bench_restricted_signed(c: &mut Criterion) {
    let target = performance_target_set();
    c.bench_function("restricted_signed/k40_h20_max1000", |b| {
        b.iter(|| restricted_signed_sumset(black_box(&target), 20).unwrap())
    });

    let irregular = irregular_set(32);
    let h = (irregular.len() / 2) as u32;
    c.bench_function("restricted_signed/irregular_k32", |b| {
        b.iter(|| restricted_signed_sumset(black_box(&irregular), h).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let small = irregular_set(14);
    c.bench_function("oracle/k14_h7", |b| {
        b.iter(|| restricted_signed_sumset_oracle_with_budget(black_box(&small), 7, u64::MAX).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let config = SearchConfig::new(5, 4, 12, Constraint::ContainsZero);
    c.bench_function("verify_direct/h4_k5_m12", |b| {
        b.iter(|| verify_direct(black_box(&config)).unwrap())
    });
}

criterion_group!(benches, bench_restricted_signed, bench_oracle, bench_sweep);
criterion_main!(benches);
