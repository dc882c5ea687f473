//! Wright function W_{λ,μ}(z) = Σ zⁿ / (n! Γ(λn + μ)) and the M-Wright
//! function M_ν(z) = W_{-ν,1-ν}(-z).
//!
//! The Wright series is summed with compensated accumulation and an explicit
//! truncation bound. For the second-kind series at positive M-Wright
//! arguments the terms grow to roughly exp((1-ν)(z νᵛ)^{1/(1-ν)}) before
//! they decay, so past a few units of z the alternating sum is dominated by
//! cancellation. There M_ν is evaluated instead from the non-oscillatory
//! representation
//!
//! ```text
//! M_ν(z) = z^{ν/(1-ν)} / ((1-ν)π) ∫_0^π A(φ) exp(-z^{1/(1-ν)} A(φ)) dφ,
//! A(φ)   = (sin νφ / sin φ)^{1/(1-ν)} · sin((1-ν)φ) / sin νφ,
//! ```
//!
//! which follows from M_ν(z) = z^{-1-1/ν} L_ν(z^{-1/ν}) / ν and Zolotarev's
//! integral for the one-sided stable density L_ν. The two routes overlap on
//! moderate z, which the tests use to cross-check them.

use std::f64::consts::PI;

use super::gamma::{ln_abs_reciprocal_gamma, ln_gamma, reciprocal_gamma};
use crate::error::{Error, Result};
use crate::quad::{try_integrate_with_breaks, QuadOptions};
use crate::sum::CompensatedSum;
use statrs::function::gamma::gamma_ui;

pub const DEFAULT_MAX_TERMS: usize = 250;
pub const DEFAULT_TOL: f64 = 1e-12;

/// Relative size below which a cancelled sum is refused.
const CANCELLATION_RATIO: f64 = 1e-8;

/// Series peak magnitude (natural log) above which M_ν goes straight to the
/// integral route.
const SERIES_PEAK_LOG_LIMIT: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    lambda: f64,
    mu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrightKind {
    /// λ ≥ 0
    First,
    /// -1 < λ < 0
    Second,
}

impl WrightParams {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda > -1.0) || !lambda.is_finite() {
            return Err(Error::invalid(format!("Wright parameter lambda must be > -1, got {lambda}")));
        }
        if !mu.is_finite() {
            return Err(Error::invalid(format!("Wright parameter mu must be finite, got {mu}")));
        }
        Ok(Self { lambda, mu })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn kind(&self) -> WrightKind {
        if self.lambda >= 0.0 {
            WrightKind::First
        } else {
            WrightKind::Second
        }
    }
}

/// Order ν ∈ [0, 1) of the M-Wright function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MWrightOrder(f64);

impl MWrightOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&nu) {
            return Err(Error::invalid(format!("M-Wright order must lie in [0, 1), got {nu}")));
        }
        Ok(Self(nu))
    }

    pub fn nu(&self) -> f64 {
        self.0
    }

    /// The Wright parameters (λ, μ) = (-ν, 1-ν).
    pub fn wright_params(&self) -> WrightParams {
        WrightParams { lambda: -self.0, mu: 1.0 - self.0 }
    }
}

/// A function value together with a bound on its numerical error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_bound: f64,
    /// Series terms, or integrand evaluations for the integral route.
    pub terms_used: usize,
}

/// W_{λ,μ}(z) with the default term cap.
pub fn wright(params: WrightParams, z: f64, tol: f64) -> Result<EvalResult> {
    wright_capped(params, z, tol, DEFAULT_MAX_TERMS)
}

/// W_{λ,μ}(z) summed from its power series with at most `max_terms` terms.
pub fn wright_capped(params: WrightParams, z: f64, tol: f64, max_terms: usize) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    if !z.is_finite() {
        return Err(Error::invalid(format!("Wright argument must be finite, got {z}")));
    }
    if z == 0.0 {
        return Ok(EvalResult {
            value: reciprocal_gamma(params.mu),
            abs_error_bound: 4.0 * f64::EPSILON * reciprocal_gamma(params.mu).abs(),
            terms_used: 1,
        });
    }

    let WrightParams { lambda, mu } = params;
    let ln_abs_z = z.abs().ln();
    let mut acc = CompensatedSum::new();
    let mut rounding = 0.0;
    let mut peak_partial: f64 = 0.0;
    // zⁿ/n! by recurrence while it stays comfortably in range
    let mut power = 1.0;
    let mut ln_factorial = 0.0;
    let mut last_env: Option<f64> = None;

    for n in 0..max_terms {
        if n > 0 {
            power *= z / n as f64;
            ln_factorial += (n as f64).ln();
        }
        let arg = lambda * n as f64 + mu;
        let (term, term_err) = if arg.abs() < 150.0 && power.abs() > 1e-280 {
            let t = power * reciprocal_gamma(arg);
            (t, 8.0 * f64::EPSILON * t.abs())
        } else {
            let (ln_rg, sign) = ln_abs_reciprocal_gamma(arg);
            if sign == 0.0 {
                (0.0, 0.0)
            } else {
                let ln_mag = n as f64 * ln_abs_z - ln_factorial + ln_rg;
                let zsign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
                let t = zsign * sign * ln_mag.exp();
                (t, (8.0 + ln_mag.abs()) * f64::EPSILON * t.abs())
            }
        };
        if !term.is_finite() {
            return Err(Error::non_convergent(
                "Wright series",
                z,
                format!("term {n} overflowed (lambda={lambda}, mu={mu})"),
            ));
        }
        acc.add(term);
        rounding += term_err;
        peak_partial = peak_partial.max(acc.value().abs());

        // Stopping test on the envelope |z|ⁿ/n! · max|1/Γ| near λn+μ, which
        // bounds the terms even where 1/Γ passes close to a zero.
        let ln_env = n as f64 * ln_abs_z - ln_factorial + ln_reciprocal_gamma_envelope(arg);
        let env = ln_env.exp();
        if let Some(prev) = last_env {
            let ratio = env / prev;
            // The envelope ratio of a Wright series decreases to zero, so
            // once it is small the remainder is dominated by a geometric tail.
            if ratio < 0.5 {
                let tail = env * ratio / (1.0 - ratio);
                if tail + env < tol {
                    let value = acc.value();
                    if rounding > tol {
                        return Err(Error::non_convergent(
                            "Wright series",
                            z,
                            format!("rounding error {rounding:.3e} exceeds tolerance {tol:.3e}"),
                        ));
                    }
                    if value.abs() < CANCELLATION_RATIO * peak_partial {
                        return Err(Error::non_convergent(
                            "Wright series",
                            z,
                            format!(
                                "cancellation: |sum| = {:.3e} against partial sums up to {peak_partial:.3e}",
                                value.abs()
                            ),
                        ));
                    }
                    return Ok(EvalResult { value, abs_error_bound: tail + rounding, terms_used: n + 1 });
                }
            }
        }
        last_env = Some(env);
    }
    Err(Error::non_convergent(
        "Wright series",
        z,
        format!("no convergence within {max_terms} terms (lambda={lambda}, mu={mu})"),
    ))
}

/// ln of an upper bound for |1/Γ(x)|: exact for x > 0, and Γ(1-x)/π from
/// the reflection formula otherwise.
fn ln_reciprocal_gamma_envelope(x: f64) -> f64 {
    if x > 0.0 {
        -ln_gamma(x)
    } else {
        ln_gamma(1.0 - x) - PI.ln()
    }
}

/// ln of the largest term magnitude of the M-Wright series at z > 0,
/// from Stirling's formula.
fn series_peak_log(nu: f64, z: f64) -> f64 {
    if nu == 0.0 {
        return z;
    }
    (1.0 - nu) * (z * nu.powf(nu)).powf(1.0 / (1.0 - nu))
}

/// M_ν(z). Uses the series where it is accurate and the integral
/// representation elsewhere (0 < ν < 1, z > 0 only).
pub fn m_wright(order: MWrightOrder, z: f64, tol: f64) -> Result<EvalResult> {
    let nu = order.nu();
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    if !z.is_finite() {
        return Err(Error::invalid(format!("M-Wright argument must be finite, got {z}")));
    }
    if nu == 0.0 || z <= 0.0 {
        return wright(order.wright_params(), -z, tol);
    }
    if series_peak_log(nu, z) <= SERIES_PEAK_LOG_LIMIT {
        if let Ok(r) = wright(order.wright_params(), -z, tol) {
            return Ok(r);
        }
    }
    m_wright_integral(order, z, tol)
}

fn ln_a(nu: f64, phi: f64) -> f64 {
    let s_nu = (nu * phi).sin();
    let s = phi.sin();
    let s_rest = ((1.0 - nu) * phi).sin();
    (s_nu.ln() - s.ln()) / (1.0 - nu) + s_rest.ln() - s_nu.ln()
}

/// Relative accuracy below which the integral route does not refine.
const ROUNDING_FLOOR: f64 = 100.0 * f64::EPSILON;

/// M_ν(z) from the integral representation; requires 0 < ν < 1 and z > 0.
pub fn m_wright_integral(order: MWrightOrder, z: f64, tol: f64) -> Result<EvalResult> {
    let nu = order.nu();
    if !(nu > 0.0) || !(z > 0.0) {
        return Err(Error::invalid(format!(
            "integral representation needs 0 < nu < 1 and z > 0, got nu={nu}, z={z}"
        )));
    }
    let inv = 1.0 / (1.0 - nu);
    let scale = z.powf(inv);
    let ln_prefactor = nu * inv * z.ln() - ((1.0 - nu) * PI).ln();
    let prefactor = ln_prefactor.exp();

    let integrand = |phi: f64| -> std::result::Result<f64, Error> {
        if phi <= 0.0 || phi >= PI {
            return Ok(0.0);
        }
        let la = ln_a(nu, phi);
        let a = la.exp();
        let e = scale * a;
        if !e.is_finite() || e > 745.0 + la {
            return Ok(0.0);
        }
        Ok((la - e).exp())
    };
    let opts = QuadOptions {
        abs_tol: 0.25 * tol / prefactor.max(f64::MIN_POSITIVE),
        rel_tol: ROUNDING_FLOOR,
        max_panels: 400,
    };
    let breaks = [0.0, 0.125 * PI, 0.5 * PI, 0.875 * PI, PI];
    let r = try_integrate_with_breaks(integrand, &breaks, opts)?;
    let value = prefactor * r.value;
    let abs_error_bound = prefactor * r.abs_error;
    // tolerances below the rounding floor of the quadrature are capped there
    let attainable = tol.max(ROUNDING_FLOOR * value.abs());
    if !value.is_finite() || !(r.converged || abs_error_bound <= attainable) {
        return Err(Error::non_convergent(
            "M-Wright integral",
            z,
            format!("error estimate {abs_error_bound:.3e} above tolerance {tol:.3e}"),
        ));
    }
    Ok(EvalResult { value, abs_error_bound, terms_used: r.evaluations })
}

/// W_{-ν,2-ν}(-z), the profile of the second Cauchy Green function, from the
/// same integral representation integrated in closed form over z: for
/// 1/2 < ν < 1 and z > 0, with a = (2ν-1)/ν,
///
/// ```text
/// W_{-ν,2-ν}(-z) = z^{1/ν-1} / (νπ) ∫_0^π A(φ)^{1-a} Γ(a, z^{1/(1-ν)} A(φ)) dφ.
/// ```
pub fn wright_primitive_integral(order: MWrightOrder, z: f64, tol: f64) -> Result<EvalResult> {
    let nu = order.nu();
    if !(nu > 0.5) || !(z > 0.0) || !z.is_finite() {
        return Err(Error::invalid(format!(
            "integral representation needs 1/2 < nu < 1 and z > 0, got nu={nu}, z={z}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let a = (2.0 * nu - 1.0) / nu;
    let scale = z.powf(1.0 / (1.0 - nu));
    let prefactor = z.powf(1.0 / nu - 1.0) / (nu * PI);
    let integrand = |phi: f64| -> std::result::Result<f64, Error> {
        if phi <= 0.0 || phi >= PI {
            return Ok(0.0);
        }
        let la = ln_a(nu, phi);
        let x = scale * la.exp();
        // Γ(a, x) < e^{-x} for a < 1
        if !x.is_finite() || x > 745.0 {
            return Ok(0.0);
        }
        Ok(((1.0 - a) * la).exp() * gamma_ui(a, x))
    };
    let opts = QuadOptions {
        abs_tol: 0.25 * tol / prefactor.max(f64::MIN_POSITIVE),
        rel_tol: ROUNDING_FLOOR,
        max_panels: 400,
    };
    let breaks = [0.0, 0.125 * PI, 0.5 * PI, 0.875 * PI, PI];
    let r = try_integrate_with_breaks(integrand, &breaks, opts)?;
    let value = prefactor * r.value;
    let abs_error_bound = prefactor * r.abs_error;
    let attainable = tol.max(ROUNDING_FLOOR * value.abs());
    if !value.is_finite() || !(r.converged || abs_error_bound <= attainable) {
        return Err(Error::non_convergent(
            "Wright primitive integral",
            z,
            format!("error estimate {abs_error_bound:.3e} above tolerance {tol:.3e}"),
        ));
    }
    Ok(EvalResult { value, abs_error_bound, terms_used: r.evaluations })
}

/// Argument beyond which M_ν(z) stays below `eps`, from the leading
/// asymptotic envelope a·z^p·exp(-b z^{1/(1-ν)}), padded by 10%.
pub fn m_wright_tail_cutoff(order: MWrightOrder, eps: f64) -> f64 {
    let nu = order.nu();
    let q = 1.0 / (1.0 - nu);
    let p = (nu - 0.5) * q;
    let b = (1.0 - nu) * nu.powf(nu * q);
    let a = (2.0 * PI * (1.0 - nu)).sqrt().recip() * nu.powf((0.5 - nu) * q);
    if nu == 0.0 {
        return 1.1 * (1.0 / eps).ln().max(1.0);
    }
    let target = (a / eps).ln().max(1.0);
    let mut z: f64 = (target / b).powf(1.0 - nu).max(1.0);
    for _ in 0..30 {
        let next = ((target + p * z.ln()).max(1.0) / b).powf(1.0 - nu);
        if (next - z).abs() < 1e-10 * z {
            z = next;
            break;
        }
        z = next;
    }
    1.1 * z.max(1.0)
}
