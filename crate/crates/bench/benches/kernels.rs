use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fracwave::fracops::{fd_solve, FDGrid};
use fracwave::green::{green_cauchy, green_cauchy_second};
use fracwave::solver::solve_cauchy;
use fracwave::specfun::{m_wright, MWrightOrder, DEFAULT_TOL};
use fracwave::{FracOrder, Signal};

fn specfun(c: &mut Criterion) {
    let mut g = c.benchmark_group("m_wright");
    for (nu, z) in [(0.5, 1.0), (0.75, 1.5), (0.75, 6.0), (0.85, 3.0)] {
        let order = MWrightOrder::new(nu).unwrap();
        g.bench_function(format!("nu{nu}_z{z}"), |b| {
            b.iter(|| m_wright(order, black_box(z), DEFAULT_TOL).unwrap())
        });
    }
    g.finish();
}

fn green(c: &mut Criterion) {
    let mut g = c.benchmark_group("green");
    for (nu, x) in [(0.65, 0.7), (0.75, 0.7), (0.75, 2.5)] {
        let order = FracOrder::from_nu(nu).unwrap();
        g.bench_function(format!("cauchy_nu{nu}_x{x}"), |b| {
            b.iter(|| green_cauchy(order, black_box(x), 1.0).unwrap())
        });
        g.bench_function(format!("second_nu{nu}_x{x}"), |b| {
            b.iter(|| green_cauchy_second(order, black_box(x), 1.0).unwrap())
        });
    }
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(10);
    let order = FracOrder::from_nu(0.75).unwrap();
    let xs: Vec<f64> = (0..=70).map(|i| i as f64 * 0.05).collect();
    g.bench_function("solve_cauchy_box_nu0.75", |b| {
        b.iter(|| solve_cauchy(order, &Signal::unit_box(), &Signal::Zero, &xs, &[0.5, 1.0], 1e-10).unwrap())
    });
    let grid = FDGrid::covering(order, 3.5, 1.0, 0.02, 1e-3).unwrap();
    g.bench_function("fd_solve_box_nu0.75", |b| {
        b.iter(|| fd_solve(&grid, &Signal::unit_box(), &Signal::Zero).unwrap())
    });
    g.finish();
}

criterion_group!(benches, specfun, green, solvers);
criterion_main!(benches);
