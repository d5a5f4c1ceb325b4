use std::hint::black_box;

use actlab_core::act::{pointed_iso, pointed_iso_bruteforce};
use actlab_core::corpus::{fixture_corpus, random_acts};
use actlab_core::families::finite::right_zeros_adjoined;
use actlab_core::smallgen::small_monoids;
use actlab_core::witness::build_grid;
use actlab_core::FiniteAct;
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_enumerate_congruences(c: &mut Criterion) {
    let entry = fixture_corpus()
        .into_iter()
        .find(|e| e.name == "chain-z2")
        .unwrap();
    let act = FiniteAct::regular_representation(entry.monoid.clone());
    c.bench_function("enumerate_congruences/chain-z2", |b| {
        b.iter(|| black_box(&act).enumerate_congruences(4096))
    });
}

fn bench_build_grid(c: &mut Criterion) {
    let m = right_zeros_adjoined(2).into_arc();
    let mut group = c.benchmark_group("build_grid/right-zero-pair");
    for n in [3usize, 5] {
        group.bench_function(format!("n={n}"), |b| {
            b.iter(|| build_grid(black_box(&m), 0, 1, 2, n).unwrap())
        });
    }
    group.finish();
}

fn bench_pointed_iso(c: &mut Criterion) {
    let entry = fixture_corpus()
        .into_iter()
        .find(|e| e.name == "chain-z2")
        .unwrap();
    let acts = random_acts(&entry.monoid, 2, 8, 0xBE);
    let (left, right) = (&acts[0], &acts[1]);
    c.bench_function("pointed_iso/chain-z2", |b| {
        b.iter(|| {
            let mut hits = 0u32;
            for p in 0..left.size() {
                for q in 0..right.size() {
                    if pointed_iso(black_box(left), p, black_box(right), q).is_some() {
                        hits += 1;
                    }
                }
            }
            hits
        })
    });
    c.bench_function("pointed_iso_bruteforce/chain-z2", |b| {
        b.iter(|| {
            let mut hits = 0u32;
            for p in 0..left.size() {
                for q in 0..right.size() {
                    if pointed_iso_bruteforce(black_box(left), p, black_box(right), q) {
                        hits += 1;
                    }
                }
            }
            hits
        })
    });
}

fn bench_small_monoids(c: &mut Criterion) {
    c.bench_function("small_monoids/order-3", |b| {
        b.iter(|| small_monoids(black_box(3)))
    });
}

criterion_group!(
    benches,
    bench_enumerate_congruences,
    bench_build_grid,
    bench_pointed_iso,
    bench_small_monoids
);
criterion_main!(benches);
