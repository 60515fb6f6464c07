use std::time::Duration;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use floodlab_bench::{grid, random};
use floodlab_core::reductions::tight_path;
use floodlab_core::solver::{
    approx_free, greedy_fixed, lower_bound, solve_fixed_exact, solve_free_exact, SearchBudget,
};
use floodlab_core::Move;

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.measurement_time(Duration::from_secs(5));
    let budget = SearchBudget::unlimited();
    for n in [3, 5] {
        let inst = tight_path(n).unwrap();
        group.bench_with_input(BenchmarkId::new("free/tight_path", n), &inst, |b, i| {
            b.iter(|| solve_free_exact(black_box(i), &budget).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fixed/tight_path", n), &inst, |b, i| {
            b.iter(|| solve_fixed_exact(black_box(i), 0, &budget).unwrap())
        });
    }
    let g = grid(4, 4, 3, 1);
    group.bench_function("free/grid4x4c3", |b| {
        b.iter(|| solve_free_exact(black_box(&g), &budget).unwrap())
    });
    let r = random(12, 0.25, 3, 2);
    group.bench_function("free/random12c3", |b| {
        b.iter(|| solve_free_exact(black_box(&r), &budget).unwrap())
    });
    group.bench_function("fixed/random12c3", |b| {
        b.iter(|| solve_fixed_exact(black_box(&r), 0, &budget).unwrap())
    });
    group.finish();
}

fn heuristics(c: &mut Criterion) {
    let g = grid(14, 14, 6, 3);
    c.bench_function("greedy_fixed/grid14x14c6", |b| {
        b.iter(|| greedy_fixed(black_box(&g), 0).unwrap())
    });
    let small = grid(8, 8, 4, 4);
    c.bench_function("approx_free/grid8x8c4", |b| {
        b.iter(|| approx_free(black_box(&small)).unwrap())
    });
    c.bench_function("lower_bound/grid14x14c6", |b| {
        let s = g.initial_state();
        b.iter(|| lower_bound(black_box(&s)))
    });
}

fn quotient(c: &mut Criterion) {
    let g = grid(30, 30, 6, 5);
    let state = g.initial_state();
    c.bench_function("apply_move/grid30x30c6", |b| {
        b.iter(|| state.apply_move(black_box(Move::new(0, 2))).unwrap())
    });
    c.bench_function("initial_state/grid30x30c6", |b| {
        b.iter(|| black_box(&g).initial_state())
    });
}

criterion_group!(benches, exact, heuristics, quotient);
criterion_main!(benches);
