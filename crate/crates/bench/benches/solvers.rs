//! Microbenchmarks for the solver entry points on desk-size fixtures.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use threatval::clique::{build_clique_game, Graph};
use threatval::exact_two::solve_two_by;
use threatval::oracle::oracle_minmax;
use threatval::rational::rat;
use threatval::simple_approx::approx_minmax_simple;
use threatval::support_enum::{minmax_support_enum, SolveOptions};
use threatval::threat::bully_threat_value;
use threatval::zerosum::zs_value;

use threatval_bench::{golden_three, mixed_two, wide_bully, zs_matrix};

fn bench_solvers(c: &mut Criterion) {
    let mixed = mixed_two();
    c.bench_function("exact_two/2x2x2", |b| {
        b.iter(|| solve_two_by(black_box(&mixed)).unwrap())
    });

    let golden = golden_three();
    let opts = SolveOptions::default();
    c.bench_function("support_enum_exact/3x2x2", |b| {
        b.iter(|| minmax_support_enum(black_box(&golden), &opts).unwrap())
    });

    let matrix = zs_matrix();
    c.bench_function("zs_value/4x10", |b| {
        b.iter(|| zs_value(black_box(&matrix)).unwrap())
    });

    c.bench_function("oracle/2x2x2_r60", |b| {
        b.iter(|| oracle_minmax(black_box(&mixed), 60).unwrap())
    });

    c.bench_function("simple_approx/2x2x2_s4", |b| {
        b.iter(|| approx_minmax_simple(black_box(&mixed), 4).unwrap())
    });

    let wide = wide_bully();
    let eps = rat(1, 10);
    c.bench_function("bully_threat/4x2x4", |b| {
        b.iter(|| bully_threat_value(black_box(&wide), &eps).unwrap())
    });

    let c5 = Graph::cycle(5).unwrap();
    c.bench_function("clique_game/c5_k3", |b| {
        b.iter(|| build_clique_game(black_box(&c5), 3).unwrap())
    });
}

criterion_group!(benches, bench_solvers);
criterion_main!(benches);
