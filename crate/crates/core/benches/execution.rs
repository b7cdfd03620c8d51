//! Sequential vs data-parallel execution of the heaviest sweeps.
//!
//! Both backends return identical results; only wall time differs. Without the
//! `parallel` feature the two rows measure the same sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use blockweyl::coxeter::{Family, FiniteType};
use blockweyl::exec::Backend;
use blockweyl::green::{self, EliminationOrder};
use blockweyl::weighted;

fn pairing_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("omega_prime_matrix");
    g.sample_size(10);
    for (ty, w) in [(FiniteType::new(Family::C, 3), vec![3u64, 1, 1, 3]), (FiniteType::new(Family::B, 4), vec![1, 1, 1, 1, 1])] {
        let tbl = weighted::c_function(ty, &w).expect("c-function");
        for backend in [Backend::Sequential, Backend::Parallel] {
            g.bench_with_input(BenchmarkId::new(format!("{backend:?}"), format!("~{ty} {w:?}")), &tbl, |b, tbl| {
                b.iter(|| green::omega_prime_matrix(tbl, backend).expect("matrix"))
            });
        }
    }
    g.finish();
}

fn factorization(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_p_lambda");
    g.sample_size(10);
    let tbl = weighted::c_function(FiniteType::new(Family::C, 3), &[3, 1, 1, 3]).expect("c-function");
    let om = green::omega_prime_matrix(&tbl, Backend::Sequential).expect("matrix");
    for order in [EliminationOrder::RowByRow, EliminationOrder::TrailingUpdate] {
        g.bench_function(format!("{order:?}"), |b| b.iter(|| green::solve_p_lambda(&om, order).expect("solve")));
    }
    g.finish();
}

criterion_group!(benches, pairing_matrix, factorization);
criterion_main!(benches);
