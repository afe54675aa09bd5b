//! Compares the data-parallel entry points against their sequential
//! fallbacks. On a single-core host the two are expected to tie (modulo
//! thread-pool overhead); the parallel path pays off only with real cores.

use criterion::{criterion_group, criterion_main, Criterion};
use fano_core::families::{d4_nonexistence_scan_seq, smoothness_scan};
use fano_core::surface::lambda_survey_seq;

#[cfg(feature = "parallel")]
use fano_core::families::d4_nonexistence_scan;
#[cfg(feature = "parallel")]
use fano_core::surface::lambda_survey;

fn bench_survey(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda_survey");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(lambda_survey_seq));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(lambda_survey));
    group.finish();
}

fn bench_d4_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("d4_nonexistence_scan");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(d4_nonexistence_scan_seq));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(d4_nonexistence_scan));
    group.finish();
}

fn bench_smoothness_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("smoothness_scan");
    group.sample_size(10);
    group.bench_function("d5_seed_1", |b| b.iter(|| smoothness_scan("d5", 1)));
    group.finish();
}

criterion_group!(benches, bench_survey, bench_d4_scan, bench_smoothness_scan);
criterion_main!(benches);
