//! Criterion benchmarks for the hot paths of the pipeline: big-integer
//! Fibonacci evaluation, solution enumeration, continued-fraction expansion
//! of τ, certified logarithms, and a single reduction stage.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;
use quadfib_core::cfrac::ContinuedFraction;
use quadfib_core::dpreduce::ReductionEngine;
use quadfib_core::realfield::consts;
use quadfib_core::search::enumerate_solutions;
use quadfib_core::sequences::fib;
use std::hint::black_box;

fn bench_fib(c: &mut Criterion) {
    c.bench_function("fib_10000", |b| {
        b.iter(|| fib(black_box(10_000)))
    });
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate_solutions_n1_350", |b| {
        b.iter(|| enumerate_solutions(black_box(350)))
    });
}

fn bench_cfrac(c: &mut Criterion) {
    c.bench_function("tau_continued_fraction_115_terms", |b| {
        b.iter(|| ContinuedFraction::tau(black_box(115)).unwrap().len())
    });
}

fn bench_log(c: &mut Criterion) {
    c.bench_function("tau_enclosure_1024_bits", |b| {
        b.iter(|| consts::tau(black_box(1024)))
    });
}

fn bench_reduce_stage1(c: &mut Criterion) {
    c.bench_function("reduction_stage_1", |b| {
        b.iter_batched(
            || ReductionEngine::new().unwrap(),
            |mut eng| eng.run_stage(1, None).unwrap().bound,
            BatchSize::PerIteration,
        )
    });
}

fn bench_legendre(c: &mut Criterion) {
    c.bench_function("legendre_fallback_a13", |b| {
        b.iter_batched(
            || {
                (
                    ReductionEngine::new().unwrap(),
                    BigInt::from(28u8) * BigInt::from(10u8).pow(57),
                )
            },
            |(mut eng, m)| eng.legendre_fallback(13, &m).unwrap(),
            BatchSize::PerIteration,
        )
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_fib, bench_enumerate, bench_cfrac, bench_log,
              bench_reduce_stage1, bench_legendre
}
criterion_main!(benches);
