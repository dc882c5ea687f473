//! Cauchy problem for the time-fractional diffusion-wave equation by space
//! convolution of the Green functions with the initial data:
//!
//! ```text
//! u(x,t) = ∫ G_C(ξ,t) f(x-ξ) dξ                         0 < ν ≤ 1/2
//! u(x,t) = ∫ [G_C(ξ,t) f(x-ξ) + G_C2(ξ,t) g(x-ξ)] dξ     1/2 < ν < 1
//! u(x,t) = ½[f(x-t) + f(x+t)] + ½ ∫_{x-t}^{x+t} g        ν = 1
//! ```

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Provenance, SolutionField};
use crate::green::{green_cauchy_second_tol, green_cauchy_tol, FracOrder};
use crate::quad::{try_integrate_with_breaks, QuadOptions};
use crate::signal::Signal;
use crate::specfun::{m_wright, m_wright_tail_cutoff};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// G_C, convolved with u(x, 0)
    First,
    /// its time primitive, convolved with u_t(x, 0)
    Second,
}

/// Accuracy requested from each kernel evaluation, relative to the
/// per-point tolerance.
const KERNEL_TOL_FACTOR: f64 = 1e-3;
const KERNEL_TOL_FLOOR: f64 = 1e-14;

fn kernel_tol(tol: f64) -> f64 {
    (tol * KERNEL_TOL_FACTOR).max(KERNEL_TOL_FLOOR)
}

fn check_kernel(order: FracOrder, kernel: Kernel) -> Result<()> {
    let nu = order.nu();
    match kernel {
        Kernel::First if nu >= 1.0 => {
            Err(Error::invalid("the first Green function is a pair of deltas at nu = 1; use characteristics"))
        }
        Kernel::Second if !(nu > 0.5 && nu < 1.0) => Err(Error::invalid(format!(
            "the second Green function kernel applies for 1/2 < nu < 1, got nu={nu}"
        ))),
        _ => Ok(()),
    }
}

/// |ξ| beyond which the kernel is negligible against `tol`.
fn kernel_reach(order: FracOrder, t: f64, tol: f64) -> Result<f64> {
    let m = order.m_wright_order()?;
    Ok(t.powf(order.nu()) * m_wright_tail_cutoff(m, (tol * 1e-3).max(1e-300)))
}

fn kernel_value(order: FracOrder, kernel: Kernel, xi: f64, t: f64, tol: f64) -> Result<f64> {
    match kernel {
        Kernel::First => green_cauchy_tol(order, xi, t, kernel_tol(tol)),
        Kernel::Second => green_cauchy_second_tol(order, xi, t, kernel_tol(tol)),
    }
}

fn sorted_breaks(lo: f64, hi: f64, interior: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut inner: Vec<f64> = interior.into_iter().filter(|p| *p > lo && *p < hi).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    pts.extend(inner);
    pts.push(hi);
    pts
}

fn finish(r: crate::quad::Integral, tol: f64, x: f64) -> Result<f64> {
    if !r.converged && r.abs_error > tol {
        return Err(Error::non_convergent(
            "Green convolution",
            x,
            format!("quadrature error {:.3e} above tolerance {tol:.3e}", r.abs_error),
        ));
    }
    Ok(r.value)
}

/// Single-point convolution ∫ K(ξ, t) f(x - ξ) dξ.
pub fn convolve_green(order: FracOrder, kernel: Kernel, f: &Signal, x: f64, t: f64, tol: f64) -> Result<f64> {
    check_kernel(order, kernel)?;
    f.validate()?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("time must be positive, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let t_nu = t.powf(order.nu());
    match f {
        Signal::Zero => Ok(0.0),
        Signal::Delta { location, weight } => Ok(weight * kernel_value(order, kernel, x - location, t, tol)?),
        Signal::Box { left, right, height } => {
            if *height == 0.0 {
                return Ok(0.0);
            }
            let h = height.abs();
            match kernel {
                Kernel::First => {
                    // ∫_{x-b}^{x-a} G_C dξ = ½ ∫ M_ν(|z|) dz over z = ξ/tᵛ
                    let m = order.m_wright_order()?;
                    let zc = m_wright_tail_cutoff(m, (tol * 1e-3 / h).max(1e-300));
                    let lo = ((x - right) / t_nu).max(-zc);
                    let hi = ((x - left) / t_nu).min(zc);
                    if hi <= lo {
                        return Ok(0.0);
                    }
                    let inner_tol = kernel_tol(tol / h);
                    let breaks = sorted_breaks(lo, hi, [0.0, -1.0, 1.0]);
                    let r = try_integrate_with_breaks(
                        |z| Ok::<f64, Error>(0.5 * m_wright(m, z.abs(), inner_tol)?.value),
                        &breaks,
                        QuadOptions { abs_tol: 0.5 * tol / h, rel_tol: 0.0, max_panels: 1000 },
                    )?;
                    Ok(height * finish(r, tol / h, x)?)
                }
                Kernel::Second => {
                    let reach = kernel_reach(order, t, tol / h)?;
                    let lo = (x - right).max(-reach);
                    let hi = (x - left).min(reach);
                    if hi <= lo {
                        return Ok(0.0);
                    }
                    let breaks = sorted_breaks(lo, hi, [0.0, -t_nu, t_nu]);
                    let r = try_integrate_with_breaks(
                        |xi| kernel_value(order, kernel, xi, t, tol / h),
                        &breaks,
                        QuadOptions { abs_tol: 0.5 * tol / h, rel_tol: 0.0, max_panels: 1000 },
                    )?;
                    Ok(height * finish(r, tol / h, x)?)
                }
            }
        }
        Signal::Sampled(s) => {
            let scale = s.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if scale == 0.0 {
                return Ok(0.0);
            }
            let reach = kernel_reach(order, t, tol / scale)?;
            let lo = (x - s.x_end()).max(-reach);
            let hi = (x - s.x0).min(reach);
            if hi <= lo {
                return Ok(0.0);
            }
            let nodes = (0..s.values.len()).map(|i| x - (s.x0 + i as f64 * s.dx));
            let breaks = sorted_breaks(lo, hi, nodes.chain([0.0, -t_nu, t_nu]));
            let r = try_integrate_with_breaks(
                |xi| {
                    Ok::<f64, Error>(
                        kernel_value(order, kernel, xi, t, tol / scale)? * f.value_at(x - xi).unwrap_or(0.0),
                    )
                },
                &breaks,
                QuadOptions { abs_tol: 0.5 * tol, rel_tol: 0.0, max_panels: 4 * breaks.len() + 1000 },
            )?;
            finish(r, tol, x)
        }
    }
}

fn dalembert(f: &Signal, g: &Signal, x: f64, t: f64) -> Result<f64> {
    let fl = f.value_at(x - t);
    let fr = f.value_at(x + t);
    match (fl, fr) {
        (Some(a), Some(b)) => Ok(0.5 * (a + b) + 0.5 * g.integral_over(x - t, x + t)),
        _ => Err(Error::invalid("a delta initial value is not representable pointwise at nu = 1")),
    }
}

/// Solution of the Cauchy problem on `x_grid` at each of `times`.
pub fn solve_cauchy(
    order: FracOrder,
    f: &Signal,
    g: &Signal,
    x_grid: &[f64],
    times: &[f64],
    tol: f64,
) -> Result<SolutionField> {
    f.validate()?;
    g.validate()?;
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(t) = times.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
        return Err(Error::invalid(format!("output times must be positive, got {t}")));
    }
    if x_grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("grid points must be finite"));
    }
    let nu = order.nu();
    if nu <= 0.5 && !g.is_zero() {
        return Err(Error::invalid(format!("an initial velocity only applies for nu > 1/2, got nu={nu}")));
    }
    if nu >= 1.0 && matches!(g, Signal::Delta { .. }) {
        return Err(Error::invalid("a delta initial velocity is not supported at nu = 1"));
    }

    let provenance = if nu >= 1.0 { Provenance::Characteristics } else { Provenance::AnalyticConvolution };
    let nx = x_grid.len();
    let flat: Vec<f64> = (0..times.len() * nx)
        .into_par_iter()
        .map(|idx| {
            let t = times[idx / nx];
            let x = x_grid[idx % nx];
            if nu >= 1.0 {
                return dalembert(f, g, x, t);
            }
            let mut u = match f {
                Signal::Delta { location, weight } => {
                    weight * green_cauchy_tol(order, x - location, t, kernel_tol(tol))?
                }
                _ => convolve_green(order, Kernel::First, f, x, t, tol)?,
            };
            if !g.is_zero() {
                u += convolve_green(order, Kernel::Second, g, x, t, tol)?;
            }
            Ok(u)
        })
        .collect::<Result<_>>()?;
    let values = flat.chunks(nx.max(1)).map(|c| c.to_vec()).take(times.len()).collect();
    SolutionField::new(nu, x_grid.to_vec(), times.to_vec(), values, provenance)
}
