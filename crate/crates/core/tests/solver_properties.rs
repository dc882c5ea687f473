use fracwave::green::{green_cauchy, green_cauchy_second};
use fracwave::solver::{convolve_green, solve_cauchy, Kernel};
use fracwave::{FracOrder, Provenance, Signal};

fn order(nu: f64) -> FracOrder {
    FracOrder::from_nu(nu).unwrap()
}

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Grid on [-r, r] that is exactly mirror-symmetric.
fn symmetric_grid(r: f64, n: usize) -> Vec<f64> {
    let half: Vec<f64> = (0..=n).map(|i| r * i as f64 / n as f64).collect();
    half[1..].iter().rev().map(|x| -x).chain(half.iter().copied()).collect()
}

#[test]
fn delta_reproduces_green_function() {
    let xs = grid(-4.0, 4.0, 80);
    for nu in [0.25, 0.5, 0.65, 0.85] {
        let o = order(nu);
        // at tol = 1e-9 the kernel is evaluated at the default M-Wright accuracy
        let u = solve_cauchy(o, &Signal::unit_delta(), &Signal::Zero, &xs, &[0.5, 1.0], 1e-9).unwrap();
        for (k, t) in u.times.iter().enumerate() {
            for (x, v) in xs.iter().zip(&u.values[k]) {
                let g = green_cauchy(o, *x, *t).unwrap();
                assert!((v - g).abs() <= 1e-12 * g.abs().max(1e-300) + 1e-300, "nu={nu} x={x}");
            }
        }
    }
}

#[test]
fn narrow_gaussians_approach_the_delta() {
    // width → 0 study through the sampled-signal quadrature path
    let o = order(0.65);
    let (x, t) = (0.4, 1.0);
    let g = green_cauchy(o, x, t).unwrap();
    let mut prev = f64::INFINITY;
    for w in [0.2, 0.1, 0.05, 0.025] {
        let s = Signal::sample_fn(
            |y: f64| (-(y / w).powi(2) / 2.0).exp() / (w * (2.0 * std::f64::consts::PI).sqrt()),
            -8.0 * w,
            8.0 * w,
            400,
        )
        .unwrap();
        let v = convolve_green(o, Kernel::First, &s, x, t, 1e-10).unwrap();
        let e = (v - g).abs();
        assert!(e < prev, "w={w}: {e}");
        prev = e;
    }
    // the kernel is smooth at x ≠ 0, so the defect is O(w²)
    assert!(prev < 1e-3, "{prev}");
}

#[test]
fn mass_is_conserved() {
    let xs = grid(-20.0, 20.0, 800);
    for nu in [0.5, 0.65, 0.75, 0.85] {
        let u =
            solve_cauchy(order(nu), &Signal::unit_box(), &Signal::Zero, &xs, &[0.5, 1.0, 2.0], 1e-9).unwrap();
        for k in 0..u.times.len() {
            let m = u.mass(k);
            // trapezoid on a fine grid resolves the smooth solution well
            assert!((m - 2.0).abs() < 1e-6, "nu={nu} t={}: {m}", u.times[k]);
        }
    }
}

#[test]
fn linear_in_the_initial_data() {
    let xs = grid(-3.0, 3.0, 24);
    let o = order(0.75);
    let f1 = Signal::unit_box();
    let f2 = Signal::sample_fn(|y: f64| (1.0 - y * y).max(0.0), -1.0, 1.0, 100).unwrap();
    let (a, b) = (2.0, -0.5);
    let comb = match &f2 {
        Signal::Sampled(s) => {
            // a·box + b·f2 sampled on the same nodes (box is 1 there)
            Signal::sampled(s.x0, s.dx, s.values.iter().map(|v| a + b * v).collect()).unwrap()
        }
        _ => unreachable!(),
    };
    let tol = 1e-9;
    let u1 = solve_cauchy(o, &f1, &Signal::Zero, &xs, &[1.0], tol).unwrap();
    let u2 = solve_cauchy(o, &f2, &Signal::Zero, &xs, &[1.0], tol).unwrap();
    let uc = solve_cauchy(o, &comb, &Signal::Zero, &xs, &[1.0], tol).unwrap();
    for (i, x) in xs.iter().enumerate() {
        let want = a * u1.values[0][i] + b * u2.values[0][i];
        assert!((uc.values[0][i] - want).abs() < 10.0 * tol, "x={x}");
    }
}

#[test]
fn even_data_give_even_solutions() {
    let xs = symmetric_grid(3.0, 15);
    let f = Signal::Box { left: -0.5, right: 0.5, height: 2.0 };
    let g = Signal::sample_fn(|y: f64| (-y * y).exp(), -3.0, 3.0, 121).unwrap();
    for nu in [0.3, 0.7, 0.9, 1.0] {
        let g = if nu > 0.5 { g.clone() } else { Signal::Zero };
        let u = solve_cauchy(order(nu), &f, &g, &xs, &[0.7, 1.3], 1e-9).unwrap();
        for row in &u.values {
            let n = row.len();
            for i in 0..n / 2 {
                assert!(
                    (row[i] - row[n - 1 - i]).abs() < 1e-9,
                    "nu={nu} x={}: {} vs {}",
                    xs[i],
                    row[i],
                    row[n - 1 - i]
                );
            }
        }
    }
}

#[test]
fn maximum_principle_for_diffusive_orders() {
    let xs = grid(-4.0, 4.0, 160);
    for nu in [0.2, 0.35, 0.5] {
        let u = solve_cauchy(order(nu), &Signal::unit_box(), &Signal::Zero, &xs, &[0.1, 1.0, 3.0], 1e-10)
            .unwrap();
        for row in &u.values {
            assert!(row.iter().all(|v| *v >= -1e-10 && *v <= 1.0 + 1e-10), "nu={nu}");
        }
    }
}

#[test]
fn diffusion_box_matches_erf() {
    let xs = grid(0.0, 3.5, 70);
    let u = solve_cauchy(order(0.5), &Signal::unit_box(), &Signal::Zero, &xs, &[0.5, 1.0], 1e-10).unwrap();
    for (k, t) in u.times.iter().enumerate() {
        for (x, v) in xs.iter().zip(&u.values[k]) {
            let s = 2.0 * t.sqrt();
            let want = 0.5 * (libm::erf((x + 1.0) / s) - libm::erf((x - 1.0) / s));
            assert!((v - want).abs() < 1e-9, "t={t} x={x}");
        }
    }
}

#[test]
fn wave_box_splits_in_two() {
    let xs = grid(0.0, 3.5, 35);
    let u = solve_cauchy(order(1.0), &Signal::unit_box(), &Signal::Zero, &xs, &[0.5, 1.0], 1e-10).unwrap();
    assert_eq!(u.provenance, Provenance::Characteristics);
    let bx = |y: f64| if y.abs() <= 1.0 { 1.0 } else { 0.0 };
    for (k, t) in u.times.iter().enumerate() {
        for (x, v) in xs.iter().zip(&u.values[k]) {
            assert_eq!(*v, 0.5 * (bx(x - t) + bx(x + t)), "t={t} x={x}");
        }
    }
}

#[test]
fn second_equation_velocity_kernel() {
    // g = box: u = ∫_{-1}^{1} G_C2(x-y, t) dy; check one point by brute force
    let o = order(0.75);
    let u = solve_cauchy(o, &Signal::Zero, &Signal::unit_box(), &[0.3], &[1.0], 1e-10).unwrap();
    let n = 20000;
    let h = 2.0 / n as f64;
    let brute: f64 = (0..n)
        .map(|i| {
            let y = -1.0 + (i as f64 + 0.5) * h;
            green_cauchy_second(o, 0.3 - y, 1.0).unwrap() * h
        })
        .sum();
    assert!((u.values[0][0] - brute).abs() < 1e-6, "{} vs {brute}", u.values[0][0]);
}
