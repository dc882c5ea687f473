use crate::error::{Error, Result};
use crate::specfun::{gamma, reciprocal_gamma};

/// Samples f(t0 + k·dt), k = 0..n.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid("a sampled function needs at least 2 samples"));
        }
        if !(dt > 0.0) || !dt.is_finite() || !t0.is_finite() {
            return Err(Error::invalid(format!("sampled function needs finite t0 and dt > 0, got dt={dt}")));
        }
        Ok(Self { t0, dt, values })
    }

    /// Samples `f` on [0, t_end] with `n` steps (n + 1 samples).
    pub fn from_fn(f: impl Fn(f64) -> f64, t_end: f64, n: usize) -> Result<Self> {
        let dt = t_end / n as f64;
        Self::new(0.0, dt, (0..=n).map(|k| f(k as f64 * dt)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        Self { t0: self.t0, dt: self.dt, values }
    }
}

/// Riemann–Liouville derivative samples; the first sample is NaN when the
/// derivative blows up at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct RlDerivative {
    pub function: SampledFunction,
    pub singular_at_origin: bool,
}

/// Iᵅf(t) = 1/Γ(α) ∫_0^t (t-τ)^{α-1} f(τ) dτ by product integration:
/// f is interpolated linearly and the kernel moments are exact, so the rule
/// is exact on linear f.
pub fn fractional_integral(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::invalid(format!("fractional integral order must be > 0, got {alpha}")));
    }
    let n = f.len();
    let p = alpha + 1.0;
    // k^{α+1}
    let pw: Vec<f64> = (0..=n).map(|k| (k as f64).powf(p)).collect();
    // interior weights depend only on the lag n - j
    let lag_weight = |l: usize| pw[l + 1] - 2.0 * pw[l] + pw[l - 1];
    let scale = f.dt.powf(alpha) / gamma(alpha + 2.0);
    let fv = &f.values;
    let mut out = vec![0.0; n];
    for m in 1..n {
        let mf = m as f64;
        let mut acc = (pw[m - 1] - (mf - 1.0 - alpha) * mf.powf(alpha)) * fv[0] + fv[m];
        for (j, v) in fv.iter().enumerate().take(m).skip(1) {
            acc += lag_weight(m - j) * v;
        }
        out[m] = scale * acc;
    }
    Ok(f.with_values(out))
}

/// First-derivative estimates: central differences inside, second-order
/// one-sided differences at both ends.
fn derivative_estimates(v: &[f64], dt: f64) -> Vec<f64> {
    let n = v.len();
    let mut d = vec![0.0; n];
    if n == 2 {
        let s = (v[1] - v[0]) / dt;
        return vec![s, s];
    }
    for k in 1..n - 1 {
        d[k] = (v[k + 1] - v[k - 1]) / (2.0 * dt);
    }
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dt);
    d
}

/// Second-derivative estimates, one-sided (second order) at the ends when
/// at least four samples exist.
fn second_derivative_estimates(v: &[f64], dt: f64) -> Vec<f64> {
    let n = v.len();
    let h2 = dt * dt;
    if n < 3 {
        return vec![0.0; n];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        d[k] = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / h2;
    }
    if n >= 4 {
        d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
        d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    } else {
        d[0] = d[1];
        d[n - 1] = d[n - 2];
    }
    d
}

/// L1 discretisation of the order-β Caputo derivative (0 < β < 1) of the
/// piecewise-linear interpolant of `v`.
fn l1(v: &[f64], dt: f64, beta: f64) -> Vec<f64> {
    let n = v.len();
    let q = 1.0 - beta;
    let b: Vec<f64> = (0..n).map(|k| ((k + 1) as f64).powf(q) - (k as f64).powf(q)).collect();
    let scale = dt.powf(-beta) / gamma(2.0 - beta);
    let mut out = vec![0.0; n];
    for m in 1..n {
        let mut acc = 0.0;
        for j in 0..m {
            acc += b[m - 1 - j] * (v[j + 1] - v[j]);
        }
        out[m] = scale * acc;
    }
    out
}

fn check_derivative_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid(format!("derivative order must lie in (0, 2], got {alpha}")));
    }
    Ok(())
}

/// Caputo derivative Iⁿ⁻ᵅ f⁽ⁿ⁾, n = ⌈α⌉: the L1 scheme for α < 1, L1 applied
/// to derivative estimates for 1 < α < 2, plain differences at α = 1, 2.
pub fn caputo_derivative(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    check_derivative_order(alpha)?;
    let v = &f.values;
    let out = if alpha < 1.0 {
        l1(v, f.dt, alpha)
    } else if alpha == 1.0 {
        derivative_estimates(v, f.dt)
    } else if alpha < 2.0 {
        l1(&derivative_estimates(v, f.dt), f.dt, alpha - 1.0)
    } else {
        second_derivative_estimates(v, f.dt)
    };
    Ok(f.with_values(out))
}

/// Riemann–Liouville derivative dⁿ/dtⁿ Iⁿ⁻ᵅ f with n = ⌊α⌋ + 1, by numerical
/// differentiation of the product-integration fractional integral.
///
/// The low-order Taylor part p(t) = f(0) + f'(0)·t (just f(0) for α < 1) is
/// subtracted first and its derivative added back in closed form, since
/// differencing the non-smooth Iⁿ⁻ᵅp near t = 0 loses all accuracy there.
pub fn rl_derivative(f: &SampledFunction, alpha: f64) -> Result<RlDerivative> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::invalid(format!(
            "Riemann-Liouville derivative order must lie in (0, 2), got {alpha}"
        )));
    }
    let n = alpha.floor() as usize + 1;
    let v = &f.values;
    let dt = f.dt;
    let f0 = v[0];
    let slope = if n == 2 { derivative_estimates(v, dt)[0] } else { 0.0 };
    let residual: Vec<f64> = v.iter().enumerate().map(|(k, x)| x - f0 - slope * k as f64 * dt).collect();
    let integral = fractional_integral(&f.with_values(residual), n as f64 - alpha)?;
    let mut out = if n == 1 {
        derivative_estimates(&integral.values, dt)
    } else {
        second_derivative_estimates(&integral.values, dt)
    };
    let (c0, c1) = (reciprocal_gamma(1.0 - alpha), reciprocal_gamma(2.0 - alpha));
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        let t = k as f64 * dt;
        *o += f0 * c0 * t.powf(-alpha) + slope * c1 * t.powf(1.0 - alpha);
    }
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut singular = f0 != 0.0 && alpha.fract() != 0.0;
    if alpha > 1.0 {
        singular |= (slope * dt).abs() > 1e-12 * scale;
    }
    if singular {
        out[0] = f64::NAN;
    } else if alpha < 1.0 {
        out[0] = 0.0;
    } else {
        out[0] += slope * c1;
    }
    Ok(RlDerivative { function: f.with_values(out), singular_at_origin: singular })
}
