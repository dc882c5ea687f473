//! Fundamental solutions of ∂ᵅu/∂tᵅ = ∂²u/∂x² on the line.
//!
//! With ν = α/2 and the similarity variable z = x/tᵛ:
//!
//! * Cauchy Green function `G_C(x,t) = M_ν(|x|/tᵛ) / (2tᵛ)`,
//! * its time primitive `G_C2(x,t) = t^{1-ν}/2 · W_{-ν,2-ν}(-|x|/tᵛ)`, the
//!   kernel for the initial velocity when 1 < α < 2,
//! * the Signaling Green function from the reciprocity relation
//!   `2νx G_C = t G_S = ν z M_ν(z)`.

use crate::error::{Error, Result};
use crate::specfun::{
    m_wright, m_wright_tail_cutoff, wright, wright_primitive_integral, MWrightOrder, WrightParams,
    DEFAULT_TOL,
};

/// Order of the time derivative, α ∈ (0, 2], with ν = α/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
    nu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SubDiffusion,
    Diffusion,
    DiffusionWave,
    Wave,
}

impl FracOrder {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::invalid(format!("order alpha must lie in (0, 2], got {alpha}")));
        }
        Ok(Self { alpha, nu: alpha / 2.0 })
    }

    pub fn from_nu(nu: f64) -> Result<Self> {
        Self::from_alpha(2.0 * nu)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn regime(&self) -> Regime {
        if self.alpha < 1.0 {
            Regime::SubDiffusion
        } else if self.alpha == 1.0 {
            Regime::Diffusion
        } else if self.alpha < 2.0 {
            Regime::DiffusionWave
        } else {
            Regime::Wave
        }
    }

    /// Whether the Cauchy problem takes a second initial condition u_t(x,0).
    pub fn needs_velocity(&self) -> bool {
        self.alpha > 1.0
    }

    pub(crate) fn m_wright_order(&self) -> Result<MWrightOrder> {
        if self.nu >= 1.0 {
            return Err(Error::invalid("the M-Wright kernel degenerates to delta functions at nu = 1"));
        }
        MWrightOrder::new(self.nu)
    }
}

impl std::fmt::Display for FracOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "alpha={} nu={}", self.alpha, self.nu)
    }
}

/// A space-time point with its similarity variable z = x/tᵛ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityPoint {
    pub x: f64,
    pub t: f64,
    pub z: f64,
    t_nu: f64,
}

impl SimilarityPoint {
    pub fn new(order: FracOrder, x: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::invalid(format!("time must be positive and finite, got {t}")));
        }
        if !x.is_finite() {
            return Err(Error::invalid(format!("x must be finite, got {x}")));
        }
        let t_nu = t.powf(order.nu);
        Ok(Self { x, t, z: x / t_nu, t_nu })
    }

    /// tᵛ
    pub fn time_scale(&self) -> f64 {
        self.t_nu
    }
}

pub fn green_cauchy(order: FracOrder, x: f64, t: f64) -> Result<f64> {
    green_cauchy_tol(order, x, t, DEFAULT_TOL)
}

/// G_C(x, t) with the M-Wright evaluation held to `tol` (absolute, on M_ν).
pub fn green_cauchy_tol(order: FracOrder, x: f64, t: f64, tol: f64) -> Result<f64> {
    let m = order.m_wright_order()?;
    let p = SimilarityPoint::new(order, x.abs(), t)?;
    let v = m_wright(m, p.z, tol)?.value;
    Ok(v / (2.0 * p.time_scale()))
}

pub fn green_cauchy_second(order: FracOrder, x: f64, t: f64) -> Result<f64> {
    green_cauchy_second_tol(order, x, t, DEFAULT_TOL)
}

/// Time primitive of G_C, used against the initial velocity for 1/2 < ν ≤ 1.
///
/// At ν = 1 this is the d'Alembert kernel ½·1{|x| ≤ t}.
pub fn green_cauchy_second_tol(order: FracOrder, x: f64, t: f64, tol: f64) -> Result<f64> {
    let nu = order.nu();
    if !(nu > 0.5) {
        return Err(Error::invalid(format!(
            "the second Cauchy Green function needs 1/2 < nu <= 1, got nu={nu}"
        )));
    }
    let p = SimilarityPoint::new(order, x.abs(), t)?;
    if nu == 1.0 {
        return Ok(if p.x <= t { 0.5 } else { 0.0 });
    }
    let params = WrightParams::new(-nu, 2.0 - nu)?;
    let half_scale = 0.5 * t.powf(1.0 - nu);
    // same growth estimate as for M_ν; the extra 1/Γ shift does not change it
    let peak = (1.0 - nu) * (p.z * nu.powf(nu)).powf(1.0 / (1.0 - nu));
    if peak <= 16.0 {
        if let Ok(r) = wright(params, -p.z, tol / half_scale.max(1.0)) {
            return Ok(half_scale * r.value);
        }
    }
    let m = order.m_wright_order()?;
    if p.z >= m_wright_tail_cutoff(m, 1e-18) {
        return Ok(0.0);
    }
    Ok(half_scale * wright_primitive_integral(m, p.z, tol / half_scale.max(1.0))?.value)
}

/// Signaling Green function at x > 0 via the reciprocity relation.
pub fn green_signaling(order: FracOrder, x: f64, t: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid(format!("the Signaling Green function is defined for x > 0, got {x}")));
    }
    let g = green_cauchy(order, x, t)?;
    Ok(2.0 * order.nu() * x / t * g)
}
