use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use howe_bench::{sampled_characters, series_symbols};
use howe_core::character::{first_occurrence_general, first_occurrence_scan, SampleKind, Target};
use howe_core::partition::partitions_of;
use howe_core::symbol::{enumerate_series, SeriesFamily, SeriesTag, Sign};
use howe_core::theta::{first_occurrence_bruteforce, first_occurrence_unitary, theta_zero, Parity, SeriesCache};

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate sp rank 10", |b| {
        b.iter(|| enumerate_series(SeriesTag::new(SeriesFamily::Sp, black_box(10))).unwrap())
    });
    c.bench_function("enumerate o+ rank 10", |b| {
        b.iter(|| enumerate_series(SeriesTag::new(SeriesFamily::OEvenPlus, black_box(10))).unwrap())
    });
}

fn theta_zero_maps(c: &mut Criterion) {
    let symbols = series_symbols(SeriesFamily::Sp, 8);
    c.bench_function("theta zero on sp rank <= 8", |b| {
        b.iter(|| {
            for s in &symbols {
                black_box(theta_zero(s, Sign::Plus));
                black_box(theta_zero(s, Sign::Minus));
            }
        })
    });
}

fn scanning_oracles(c: &mut Criterion) {
    let symbols = series_symbols(SeriesFamily::Sp, 5);
    c.bench_function("scan first occurrence sp rank <= 5, cold cache", |b| {
        b.iter_batched(
            SeriesCache::new,
            |cache| {
                for s in &symbols {
                    black_box(first_occurrence_bruteforce(&cache, s, SeriesFamily::OEvenMinus).unwrap());
                }
            },
            BatchSize::LargeInput,
        )
    });
    let cache = SeriesCache::new();
    let lambdas = partitions_of(8);
    c.bench_function("scan unitary first occurrence |lambda| = 8, warm cache", |b| {
        b.iter(|| {
            for l in &lambdas {
                black_box(first_occurrence_unitary(&cache, l, Parity::Even).unwrap());
            }
        })
    });
}

fn general_characters(c: &mut Criterion) {
    let cache = SeriesCache::new();
    let sample = sampled_characters(&cache, SampleKind::Sp, 50);
    c.bench_function("closed-form first occurrence, 50 sp characters", |b| {
        b.iter(|| {
            for rho in &sample {
                black_box(first_occurrence_general(rho, Target::OEvenPlus).unwrap());
            }
        })
    });
    c.bench_function("scanned first occurrence, 50 sp characters", |b| {
        b.iter(|| {
            for rho in &sample {
                black_box(first_occurrence_scan(&cache, rho, Target::OEvenPlus).unwrap());
            }
        })
    });
}

criterion_group!(benches, enumeration, theta_zero_maps, scanning_oracles, general_characters);
criterion_main!(benches);
