use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hochlie_bench::{corpus, kronecker_line, truncated_poly};
use hochlie_core::kronecker::chain_report;
use hochlie_core::report::{run_analyze, AnalyzeOptions};
use hochlie_core::{bar_hh1_dim, build_algebra, hh1};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for n in [4, 8, 16] {
        let p = truncated_poly(n);
        g.bench_with_input(BenchmarkId::new("truncated_poly", n), &p, |b, p| b.iter(|| build_algebra(black_box(p))));
    }
    for n in [2, 4, 6] {
        let p = kronecker_line(n);
        g.bench_with_input(BenchmarkId::new("kronecker_line", n), &p, |b, p| b.iter(|| build_algebra(black_box(p))));
    }
    g.finish();
}

fn derivations(c: &mut Criterion) {
    let mut g = c.benchmark_group("hh1");
    for name in ["double_kronecker_chain", "cyclic_chain", "cyclic_radsq", "trivial_ext_kronecker"] {
        let a = build_algebra(&corpus(name)).unwrap();
        g.bench_function(name, |b| b.iter(|| hh1(black_box(&a), false)));
    }
    for n in [8, 16] {
        let a = build_algebra(&truncated_poly(n)).unwrap();
        g.bench_with_input(BenchmarkId::new("truncated_poly", n), &a, |b, a| b.iter(|| hh1(black_box(a), false)));
    }
    g.finish();
}

fn chains(c: &mut Criterion) {
    let mut g = c.benchmark_group("chains");
    for n in [2, 4, 6] {
        let a = build_algebra(&kronecker_line(n)).unwrap();
        let h = hh1(&a, true);
        g.bench_with_input(BenchmarkId::new("kronecker_line", n), &a, |b, a| {
            b.iter(|| chain_report(black_box(a), &h, false))
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for name in ["kronecker", "double_kronecker_chain", "cyclic_chain"] {
        let a = build_algebra(&corpus(name)).unwrap();
        g.bench_function(name, |b| b.iter(|| bar_hh1_dim(black_box(&a))));
    }
    g.finish();
}

fn analyze(c: &mut Criterion) {
    let p = corpus("cyclic_radsq");
    let opts = AnalyzeOptions::default();
    c.bench_function("analyze/cyclic_radsq", |b| b.iter(|| run_analyze(black_box(&p), &opts)));
}

criterion_group!(benches, build, derivations, chains, oracle, analyze);
criterion_main!(benches);
