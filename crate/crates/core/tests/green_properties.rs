use fracwave::green::{
    green_cauchy, green_cauchy_second, green_cauchy_tol, green_signaling, SimilarityPoint,
};
use fracwave::quad::{try_integrate_with_breaks, QuadOptions};
use fracwave::specfun::{m_wright, m_wright_tail_cutoff, MWrightOrder, DEFAULT_TOL};
use fracwave::{Error, FracOrder};
use proptest::prelude::*;

fn order(nu: f64) -> FracOrder {
    FracOrder::from_nu(nu).unwrap()
}

#[test]
fn reciprocity_on_lattice() {
    let nus = [0.25, 0.5, 0.65, 0.75];
    let xs = [0.1, 0.4, 0.9, 1.7, 3.0];
    let ts = [0.3, 1.0, 2.5, 4.0, 7.0];
    let mut count = 0;
    for &nu in &nus {
        let o = order(nu);
        let m = MWrightOrder::new(nu).unwrap();
        for &x in &xs {
            for &t in &ts {
                let gc = green_cauchy(o, x, t).unwrap();
                let gs = green_signaling(o, x, t).unwrap();
                let z = SimilarityPoint::new(o, x, t).unwrap().z;
                let rhs = nu * z * m_wright(m, z, DEFAULT_TOL).unwrap().value;
                let a = 2.0 * nu * x * gc;
                let b = t * gs;
                for (l, r) in [(a, b), (a, rhs), (b, rhs)] {
                    assert!((l - r).abs() <= 1e-12 * r.abs(), "nu={nu} x={x} t={t}: {l} {r}");
                }
                count += 1;
            }
        }
    }
    assert_eq!(count, 100);
}

#[test]
fn self_similarity() {
    // tᵛ G_C(x, t) depends on x/tᵛ only
    for nu in [0.3, 0.6, 0.8] {
        let o = order(nu);
        for z in [0.0, 0.5, 1.2] {
            let a = green_cauchy(o, z, 1.0).unwrap();
            for t in [0.2f64, 3.0] {
                let tn = t.powf(nu);
                let b = tn * green_cauchy(o, z * tn, t).unwrap();
                assert!((a - b).abs() <= 1e-13 * a.max(1e-300));
            }
        }
    }
}

fn mass(nu: f64, t: f64) -> f64 {
    let o = order(nu);
    let reach = t.powf(nu) * m_wright_tail_cutoff(MWrightOrder::new(nu).unwrap(), 1e-16);
    let r = try_integrate_with_breaks(
        |x| green_cauchy_tol(o, x, t, 1e-13),
        &[0.0, t.powf(nu), reach],
        QuadOptions { abs_tol: 1e-10, rel_tol: 1e-12, max_panels: 2000 },
    )
    .unwrap();
    2.0 * r.value
}

#[test]
fn green_function_has_unit_mass() {
    for nu in [0.25, 0.5, 0.65, 0.75, 0.85] {
        for t in [0.5, 1.0, 2.0] {
            let m = mass(nu, t);
            assert!((m - 1.0).abs() < 1e-6, "nu={nu} t={t}: {m}");
        }
    }
}

#[test]
fn diffusion_limit_is_heat_kernel() {
    for x in [-3.0, -0.5, 0.0, 0.7, 2.0] {
        for t in [0.1, 1.0, 5.0] {
            let g = green_cauchy(order(0.5), x, t).unwrap();
            let want = (-x * x / (4.0 * t)).exp() / (4.0 * std::f64::consts::PI * t).sqrt();
            assert!((g - want).abs() < 1e-9);
        }
    }
}

#[test]
fn wave_limit_concentrates_near_the_cone() {
    let o = order(0.95);
    let r = try_integrate_with_breaks(
        |x| green_cauchy_tol(o, x, 1.0, 1e-12),
        &[0.7, 1.0, 1.3],
        QuadOptions::abs(1e-9),
    )
    .unwrap();
    let m = 2.0 * r.value;
    assert!(m >= 0.8, "{m}");
    assert!(m <= 1.0);
}

#[test]
fn second_kernel_is_time_primitive() {
    // G_C2(x,t) = ∫_0^t G_C(x,s) ds for x ≠ 0
    for nu in [0.6, 0.75, 0.85] {
        let o = order(nu);
        for (x, t) in [(0.5f64, 1.0), (1.0, 2.0), (0.3, 0.5)] {
            let r = try_integrate_with_breaks(
                |s| {
                    if s == 0.0 {
                        Ok(0.0)
                    } else {
                        green_cauchy_tol(o, x, s, 1e-13)
                    }
                },
                &[0.0, x.powf(1.0 / nu).min(t), t],
                QuadOptions::abs(1e-10),
            )
            .unwrap();
            let g2 = green_cauchy_second(o, x, t).unwrap();
            assert!((r.value - g2).abs() < 1e-6, "nu={nu} x={x} t={t}: {} vs {g2}", r.value);
        }
    }
}

#[test]
fn second_kernel_wave_limit_is_dalembert() {
    let o = order(1.0);
    assert_eq!(green_cauchy_second(o, 0.5, 1.0).unwrap(), 0.5);
    assert_eq!(green_cauchy_second(o, -1.5, 1.0).unwrap(), 0.0);
    assert!(green_cauchy_second(order(0.5), 0.0, 1.0).is_err());
}

#[test]
fn domain_errors() {
    assert!(matches!(green_cauchy(order(0.5), 0.0, 0.0), Err(Error::Invalid(_))));
    assert!(matches!(green_cauchy(order(1.0), 0.0, 1.0), Err(Error::Invalid(_))));
    assert!(matches!(green_signaling(order(0.5), -1.0, 1.0), Err(Error::Invalid(_))));
}

proptest! {
    #[test]
    fn cauchy_green_is_even(nu in 0.05f64..0.9, x in 0.0f64..4.0, t in 0.1f64..5.0) {
        let o = order(nu);
        prop_assert_eq!(green_cauchy(o, x, t).unwrap(), green_cauchy(o, -x, t).unwrap());
    }

    #[test]
    fn cauchy_green_is_nonnegative(nu in 0.05f64..0.9, x in -4.0f64..4.0, t in 0.1f64..5.0) {
        prop_assert!(green_cauchy(order(nu), x, t).unwrap() >= -1e-12);
    }
}
