use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    AnalyticConvolution,
    FiniteDifference,
    Characteristics,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::AnalyticConvolution => "analytic-convolution",
            Provenance::FiniteDifference => "finite-difference",
            Provenance::Characteristics => "characteristics",
        })
    }
}

/// Solution samples u(x, t) on a space grid at a list of output times.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub nu: f64,
    pub x_grid: Vec<f64>,
    pub times: Vec<f64>,
    /// One row per output time, one column per grid point.
    pub values: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

impl SolutionField {
    pub fn new(
        nu: f64,
        x_grid: Vec<f64>,
        times: Vec<f64>,
        values: Vec<Vec<f64>>,
        provenance: Provenance,
    ) -> Result<Self> {
        if values.len() != times.len() || values.iter().any(|row| row.len() != x_grid.len()) {
            return Err(Error::invalid("solution field dimensions do not match its grids"));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid("solution field contains non-finite values"));
        }
        Ok(Self { nu, x_grid, times, values, provenance })
    }

    /// Index of the output time closest to `t`.
    pub fn time_index(&self, t: f64) -> Option<usize> {
        self.times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(i, _)| i)
    }

    /// Linear interpolation of row `k` at `x`; zero outside the grid.
    pub fn interpolate(&self, k: usize, x: f64) -> f64 {
        let xs = &self.x_grid;
        let row = &self.values[k];
        if xs.is_empty() || x < xs[0] || x > xs[xs.len() - 1] {
            return 0.0;
        }
        let j = xs.partition_point(|&p| p <= x);
        if j == 0 {
            return row[0];
        }
        if j >= xs.len() {
            return row[xs.len() - 1];
        }
        let (x0, x1) = (xs[j - 1], xs[j]);
        let w = (x - x0) / (x1 - x0);
        (1.0 - w) * row[j - 1] + w * row[j]
    }

    /// Trapezoidal ∫ u dx of row `k`.
    pub fn mass(&self, k: usize) -> f64 {
        self.x_grid
            .windows(2)
            .zip(self.values[k].windows(2))
            .map(|(x, u)| 0.5 * (u[0] + u[1]) * (x[1] - x[0]))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_is_checked() {
        let f =
            SolutionField::new(0.5, vec![0.0, 1.0], vec![1.0], vec![vec![1.0]], Provenance::FiniteDifference);
        assert!(f.is_err());
        let f =
            SolutionField::new(0.5, vec![0.0], vec![1.0], vec![vec![f64::NAN]], Provenance::FiniteDifference);
        assert!(f.is_err());
    }

    #[test]
    fn interpolation_and_mass() {
        let f = SolutionField::new(
            0.5,
            vec![0.0, 1.0, 2.0],
            vec![0.5, 1.0],
            vec![vec![0.0, 2.0, 0.0], vec![1.0, 1.0, 1.0]],
            Provenance::AnalyticConvolution,
        )
        .unwrap();
        assert_eq!(f.interpolate(0, 0.25), 0.5);
        assert_eq!(f.interpolate(0, 3.0), 0.0);
        assert_eq!(f.mass(0), 2.0);
        assert_eq!(f.time_index(0.9), Some(1));
    }
}
