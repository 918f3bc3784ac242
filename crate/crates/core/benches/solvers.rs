//! Per-family solver timings over the sizes used by the scaling checks.

use std::hint::black_box;
use std::time::Duration;

use bcs_core::interval::solve_interval_bcs;
use bcs_core::io::{gen_random, Family, GenConfig};
use bcs_core::scaling::exact_bench_graph;
use bcs_core::steiner::{solve_exact_bcs_with, ExactConfig};
use bcs_core::tree::{solve_path_bcs, solve_tree_bcs};
use bcs_core::treewidth::{build_heuristic_decomposition, solve_tw_bcs};
use bcs_core::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn instance(family: Family, n: usize) -> bcs_core::io::Instance {
    gen_random(&GenConfig::new(family, n, 7 ^ n as u64)).unwrap()
}

fn tree(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree");
    for n in [500, 1000, 2000, 4000] {
        let g = instance(Family::Tree, n).graph;
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| solve_tree_bcs(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn path(c: &mut Criterion) {
    let mut group = c.benchmark_group("path");
    for n in [10_000, 100_000, 1_000_000] {
        let g = instance(Family::Path, n).graph;
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| solve_path_bcs(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn interval(c: &mut Criterion) {
    let mut group = c.benchmark_group("interval");
    group.sample_size(10);
    for n in [100, 200, 400] {
        let inst = instance(Family::Interval, n);
        let rep = inst.intervals.clone().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst.graph, |b, g| {
            b.iter(|| solve_interval_bcs(black_box(g), &rep).unwrap())
        });
    }
    group.finish();
}

fn treewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("treewidth");
    for n in [50, 100, 200] {
        let g = instance(Family::Tree, n).graph;
        let td = build_heuristic_decomposition(&g);
        group.bench_with_input(BenchmarkId::new("tree", n), &g, |b, g| {
            b.iter(|| solve_tw_bcs(black_box(g), &td).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    let config = ExactConfig {
        exec: Exec::Sequential,
        ..ExactConfig::default()
    };
    for reds in [6, 8, 10, 12] {
        let g = exact_bench_graph(reds, 7 ^ reds as u64);
        group.bench_with_input(BenchmarkId::from_parameter(reds), &g, |b, g| {
            b.iter(|| solve_exact_bcs_with(black_box(g), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tree, path, interval, treewidth, exact);
criterion_main!(benches);
