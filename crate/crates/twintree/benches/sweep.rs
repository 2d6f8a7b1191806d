//! Compares the data-parallel batch runner against its sequential fallback
//! on the two sweep shapes the tooling actually runs: orienting one graph
//! for every root pair, and exhaustive oracle checks across a pair corpus.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twintree::batch::{ordered_map, ordered_map_seq};
use twintree::generate::{circulant, named};
use twintree::oracle::brute_triple;
use twintree::orient::orient_4r4c;

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .collect()
}

/// Every root pair of a 4-regular circulant through the full orientation
/// pipeline.
fn bench_orient_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("orient-sweep");
    group.sample_size(20);
    for n in [12usize, 16, 20] {
        let g = circulant(n, &[1, 2]).unwrap();
        let pairs = all_pairs(n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &pairs, |b, pairs| {
            b.iter(|| ordered_map(pairs, |&(s, t)| orient_4r4c(&g, s, t).is_ok()));
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &pairs, |b, pairs| {
            b.iter(|| ordered_map_seq(pairs, |&(s, t)| orient_4r4c(&g, s, t).is_ok()));
        });
    }
    group.finish();
}

/// Exhaustive ground-truth queries over all root pairs of an 8-vertex sum,
/// a pure workload with no shared state at all.
fn bench_oracle_sweep(c: &mut Criterion) {
    let g = named("sum-2k4", &[]).unwrap();
    let pairs = all_pairs(g.vertex_count());
    let mut group = c.benchmark_group("oracle-sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| ordered_map(&pairs, |&(s, t)| brute_triple(&g, s, t).unwrap().verdict));
    });
    group.bench_function("sequential", |b| {
        b.iter(|| ordered_map_seq(&pairs, |&(s, t)| brute_triple(&g, s, t).unwrap().verdict));
    });
    group.finish();
}

criterion_group!(benches, bench_orient_sweep, bench_oracle_sweep);
criterion_main!(benches);
