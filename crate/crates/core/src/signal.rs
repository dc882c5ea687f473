//! Initial-condition signals for the Cauchy problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniformly sampled profile, linear between samples and zero outside
/// `[x0, x0 + (n-1)·dx]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSignal {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl SampledSignal {
    pub fn x_end(&self) -> f64 {
        self.x0 + (self.values.len() - 1) as f64 * self.dx
    }

    fn value_at(&self, x: f64) -> f64 {
        let s = (x - self.x0) / self.dx;
        let last = (self.values.len() - 1) as f64;
        if !(0.0..=last).contains(&s) {
            return 0.0;
        }
        let i = (s.floor() as usize).min(self.values.len() - 2);
        let w = s - i as f64;
        (1.0 - w) * self.values[i] + w * self.values[i + 1]
    }

    /// Exact integral of the piecewise-linear reconstruction over [a, b].
    fn integral(&self, a: f64, b: f64) -> f64 {
        let lo = a.max(self.x0);
        let hi = b.min(self.x_end());
        if hi <= lo {
            return 0.0;
        }
        let mut total = 0.0;
        for (i, w) in self.values.windows(2).enumerate() {
            let xl = self.x0 + i as f64 * self.dx;
            let xr = xl + self.dx;
            let l = lo.max(xl);
            let r = hi.min(xr);
            if r > l {
                let fl = w[0] + (w[1] - w[0]) * (l - xl) / self.dx;
                let fr = w[0] + (w[1] - w[0]) * (r - xl) / self.dx;
                total += 0.5 * (fl + fr) * (r - l);
            }
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Signal {
    Zero,
    Delta { location: f64, weight: f64 },
    Box { left: f64, right: f64, height: f64 },
    Sampled(SampledSignal),
}

impl Signal {
    pub fn unit_delta() -> Self {
        Signal::Delta { location: 0.0, weight: 1.0 }
    }

    /// The centred unit box on [-1, 1].
    pub fn unit_box() -> Self {
        Signal::Box { left: -1.0, right: 1.0, height: 1.0 }
    }

    pub fn sampled(x0: f64, dx: f64, values: Vec<f64>) -> Result<Self> {
        let s = Signal::Sampled(SampledSignal { x0, dx, values });
        s.validate()?;
        Ok(s)
    }

    /// Samples `f` on `n` uniform nodes of `[a, b]`.
    pub fn sample_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 2 || !(b > a) {
            return Err(Error::invalid("sampled signal needs b > a and at least 2 samples"));
        }
        let dx = (b - a) / (n - 1) as f64;
        Self::sampled(a, dx, (0..n).map(|i| f(a + i as f64 * dx)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Signal::Zero => Ok(()),
            Signal::Delta { location, weight } => {
                if location.is_finite() && weight.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid("delta signal needs finite location and weight"))
                }
            }
            Signal::Box { left, right, height } => {
                if !(left < right) || !left.is_finite() || !right.is_finite() {
                    Err(Error::invalid(format!("box signal needs left < right, got [{left}, {right}]")))
                } else if !height.is_finite() {
                    Err(Error::invalid("box height must be finite"))
                } else {
                    Ok(())
                }
            }
            Signal::Sampled(s) => {
                if s.values.len() < 2 {
                    Err(Error::invalid("sampled signal needs at least 2 values"))
                } else if !(s.dx > 0.0) || !s.dx.is_finite() || !s.x0.is_finite() {
                    Err(Error::invalid("sampled signal needs finite x0 and dx > 0"))
                } else if s.values.iter().any(|v| !v.is_finite()) {
                    Err(Error::invalid("sampled signal values must be finite"))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Signal::Zero => true,
            Signal::Delta { weight, .. } => *weight == 0.0,
            Signal::Box { height, .. } => *height == 0.0,
            Signal::Sampled(s) => s.values.iter().all(|v| *v == 0.0),
        }
    }

    /// Point value; `None` for a delta. Boxes are closed intervals.
    pub fn value_at(&self, x: f64) -> Option<f64> {
        match self {
            Signal::Zero => Some(0.0),
            Signal::Delta { .. } => None,
            Signal::Box { left, right, height } => {
                Some(if x >= *left && x <= *right { *height } else { 0.0 })
            }
            Signal::Sampled(s) => Some(s.value_at(x)),
        }
    }

    /// ∫_a^b f(x) dx for a ≤ b; a delta counts when its location lies in [a, b].
    pub fn integral_over(&self, a: f64, b: f64) -> f64 {
        match self {
            Signal::Zero => 0.0,
            Signal::Delta { location, weight } => {
                if *location >= a && *location <= b {
                    *weight
                } else {
                    0.0
                }
            }
            Signal::Box { left, right, height } => {
                let overlap = b.min(*right) - a.max(*left);
                if overlap > 0.0 {
                    height * overlap
                } else {
                    0.0
                }
            }
            Signal::Sampled(s) => s.integral(a, b),
        }
    }

    /// Closed interval outside of which the signal vanishes.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            Signal::Zero => None,
            Signal::Delta { location, .. } => Some((*location, *location)),
            Signal::Box { left, right, .. } => Some((*left, *right)),
            Signal::Sampled(s) => Some((s.x0, s.x_end())),
        }
    }

    pub fn mass(&self) -> f64 {
        match self.support() {
            None => 0.0,
            Some((a, b)) => self.integral_over(a, b),
        }
    }

    /// Points where the signal has kinks or jumps.
    pub fn break_points(&self) -> Vec<f64> {
        match self {
            Signal::Zero => vec![],
            Signal::Delta { location, .. } => vec![*location],
            Signal::Box { left, right, .. } => vec![*left, *right],
            Signal::Sampled(s) => (0..s.values.len()).map(|i| s.x0 + i as f64 * s.dx).collect(),
        }
    }

    /// Average of the signal over the cell [x - h/2, x + h/2].
    pub fn cell_average(&self, x: f64, h: f64) -> f64 {
        self.integral_over(x - 0.5 * h, x + 0.5 * h) / h
    }
}
