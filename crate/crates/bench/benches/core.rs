use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tractable_core::markov::{self, StochasticCover};
use tractable_core::rational::{int, ratio};
use tractable_core::rng::SplitMix64;
use tractable_core::shiftlike::{derive_gamma, SlidingBlockCode};
use tractable_core::simplicial1d::coding::birkhoff_decoding_check;
use tractable_core::simplicial1d::{build_system, refine, IntervalComplex, SimplicialSystem1D};
use tractable_core::FiniteRelation;

fn cycle_with_chords(n: usize) -> FiniteRelation {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let edges = (0..n).flat_map(|i| [(i, (i + 1) % n), (i, (i * 7 + 3) % n)]);
    FiniteRelation::new(labels, edges).unwrap()
}

fn tent_pair() -> SimplicialSystem1D {
    let k = IntervalComplex::from_ints(&[0, 1, 2]).unwrap();
    let kstar = IntervalComplex::new(vec![int(0), ratio(1, 2), int(1), ratio(3, 2), int(2)]).unwrap();
    let pairs = [
        (int(0), int(1)),
        (ratio(1, 2), int(0)),
        (int(1), int(1)),
        (ratio(3, 2), int(2)),
        (int(2), int(1)),
    ];
    build_system(k, kstar, &pairs).unwrap()
}

fn basic_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("basic_sets");
    for n in [1_000, 10_000, 100_000] {
        let g = cycle_with_chords(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| black_box(g.basic_sets().unwrap()))
        });
    }
    group.finish();
}

fn stationary(c: &mut Criterion) {
    let mut group = c.benchmark_group("stationary_distribution");
    for n in [16, 64, 256] {
        let cover = StochasticCover::uniform(cycle_with_chords(n)).unwrap();
        let class: Vec<usize> = (0..n).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &cover, |b, cover| {
            b.iter(|| black_box(markov::stationary_distribution(cover, &class).unwrap()))
        });
    }
    group.finish();
}

fn gamma_tables(c: &mut Criterion) {
    let code = SlidingBlockCode::random(2, 3, &mut SplitMix64::new(1));
    let mut group = c.benchmark_group("derive_gamma");
    for n in [4, 8, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| black_box(derive_gamma(&code, n).unwrap()))
        });
    }
    group.finish();
}

fn refinements(c: &mut Criterion) {
    let sys = tent_pair();
    let mut group = c.benchmark_group("refine");
    for n in [4, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| black_box(refine(&sys, n).unwrap()))
        });
    }
    group.finish();
}

fn decoding(c: &mut Criterion) {
    let sys = tent_pair();
    let model = sys.model().unwrap();
    let corr = model.basic_set_correspondence().unwrap();
    let pair = corr.terminal_pairs().next().unwrap();
    c.bench_function("birkhoff_decoding_check/10000", |b| {
        b.iter(|| black_box(birkhoff_decoding_check(&sys, &model, &corr, pair, 10_000, 10, 7).unwrap()))
    });
}

criterion_group!(benches, basic_sets, stationary, gamma_tables, refinements, decoding);
criterion_main!(benches);
