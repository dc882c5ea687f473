//! Reproducible run descriptions: the built-in scenarios, a small
//! TOML scenario-file format, and the runner that writes CSV and SVG output.
//!
//! A scenario file looks like
//!
//! ```toml
//! name = "box-nu075"
//! problem = "cauchy"        # or "mwright-profile"
//! nu = 0.75                 # or alpha = 1.5
//! times = [0.5, 1.0]
//! tol = 1e-10
//!
//! [grid]
//! x_min = 0.0
//! x_max = 3.5
//! dx = 0.01
//!
//! [f]
//! kind = "box"
//! left = -1.0
//! right = 1.0
//! height = 1.0
//! ```
//!
//! with optional `[g]` (initial velocity), `oracle = true` and an `[fd]`
//! table (`dx`, `dt`) for the finite-difference cross-check.

mod builtin;
mod run;
mod svg;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::green::FracOrder;
use crate::signal::Signal;

pub use builtin::{builtin, list_scenarios};
pub use run::{oracle_compare, run_scenario, OracleStats, RunReport};

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    /// u(x, t) for initial value f and (for ν > 1/2) initial velocity g.
    Cauchy { order: FracOrder, f: Signal, g: Signal },
    /// M_ν(|x|) for several orders, i.e. the ν-family of G_C shapes at t = 1.
    MWrightProfile { nus: Vec<f64> },
}

/// Resolution of the finite-difference cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdResolution {
    pub dx: f64,
    pub dt: f64,
}

impl Default for FdResolution {
    fn default() -> Self {
        Self { dx: 0.02, dt: 1e-3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub problem: Problem,
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    pub times: Vec<f64>,
    pub tol: f64,
    pub oracle: bool,
    pub fd: FdResolution,
    pub output_dir: PathBuf,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
        {
            return Err(Error::invalid(format!(
                "scenario name must be non-empty and use only [A-Za-z0-9-_.], got {:?}",
                self.name
            )));
        }
        if !(self.dx > 0.0) || !self.dx.is_finite() {
            return Err(Error::invalid(format!("invalid grid: dx must be positive, got {}", self.dx)));
        }
        if !(self.x_min < self.x_max) || !self.x_min.is_finite() || !self.x_max.is_finite() {
            return Err(Error::invalid(format!(
                "invalid grid: need x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        let cells = (self.x_max - self.x_min) / self.dx;
        if (cells - cells.round()).abs() > 1e-9 * cells.max(1.0) {
            return Err(Error::invalid(format!(
                "invalid grid: x range {} is not a multiple of dx={}",
                self.x_max - self.x_min,
                self.dx
            )));
        }
        if cells.round() > 1e7 {
            return Err(Error::invalid(format!("invalid grid: {cells} cells is too many")));
        }
        if self.times.is_empty() {
            return Err(Error::invalid("times must be non-empty"));
        }
        if self.times.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(Error::invalid(format!("times must be positive, got {:?}", self.times)));
        }
        if self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid(format!("times must be strictly increasing, got {:?}", self.times)));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.fd.dx > 0.0) || !(self.fd.dt > 0.0) {
            return Err(Error::invalid(format!(
                "invalid grid: oracle dx and dt must be positive, got dx={}, dt={}",
                self.fd.dx, self.fd.dt
            )));
        }
        match &self.problem {
            Problem::Cauchy { order, f, g } => {
                f.validate()?;
                g.validate()?;
                if !g.is_zero() && order.nu() <= 0.5 {
                    return Err(Error::invalid(format!(
                        "an initial velocity g only applies for nu > 1/2, got nu={}",
                        order.nu()
                    )));
                }
            }
            Problem::MWrightProfile { nus } => {
                if nus.is_empty() {
                    return Err(Error::invalid("mwright-profile needs at least one order in nus"));
                }
                if let Some(nu) = nus.iter().find(|nu| !(0.0..1.0).contains(*nu)) {
                    return Err(Error::invalid(format!("M-Wright order must lie in [0, 1), got {nu}")));
                }
                if self.oracle {
                    return Err(Error::invalid("oracle mode applies to cauchy problems only"));
                }
            }
        }
        Ok(())
    }

    /// Output grid x_min + i·dx, i = 0..=n.
    pub fn x_grid(&self) -> Vec<f64> {
        let n = ((self.x_max - self.x_min) / self.dx).round() as usize;
        (0..=n).map(|i| self.x_min + i as f64 * self.dx).collect()
    }

    /// Parses a scenario file; `output_dir` defaults to `out`.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| Error::invalid(format!("malformed scenario file: {e}")))?;
        let s = file.into_scenario()?;
        s.validate()?;
        Ok(s)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text)
    }

    /// The scenario in file form; parsing it back yields the same scenario
    /// (apart from the output directory).
    pub fn to_toml(&self) -> String {
        toml::to_string(&ScenarioFile::from(self)).expect("scenario serialises")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ProblemKind {
    Cauchy,
    MwrightProfile,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    x_min: f64,
    x_max: f64,
    dx: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    problem: ProblemKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nus: Option<Vec<f64>>,
    times: Vec<f64>,
    #[serde(default = "default_tol")]
    tol: f64,
    #[serde(default)]
    oracle: bool,
    grid: GridSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<Signal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<Signal>,
    #[serde(default)]
    fd: FdResolution,
    #[serde(default, skip_serializing)]
    output_dir: Option<PathBuf>,
}

fn default_tol() -> f64 {
    1e-10
}

impl ScenarioFile {
    fn into_scenario(self) -> Result<Scenario> {
        let problem = match self.problem {
            ProblemKind::Cauchy => {
                let order = match (self.nu, self.alpha) {
                    (Some(nu), None) => FracOrder::from_nu(nu)?,
                    (None, Some(alpha)) => FracOrder::from_alpha(alpha)?,
                    _ => return Err(Error::invalid("a cauchy scenario needs exactly one of nu, alpha")),
                };
                if self.nus.is_some() {
                    return Err(Error::invalid("nus only applies to mwright-profile scenarios"));
                }
                let f = self.f.ok_or_else(|| Error::invalid("a cauchy scenario needs an [f] table"))?;
                Problem::Cauchy { order, f, g: self.g.unwrap_or(Signal::Zero) }
            }
            ProblemKind::MwrightProfile => {
                if self.nu.is_some() || self.alpha.is_some() || self.f.is_some() || self.g.is_some() {
                    return Err(Error::invalid(
                        "mwright-profile scenarios take nus only (no nu, alpha, f, g)",
                    ));
                }
                Problem::MWrightProfile {
                    nus: self.nus.ok_or_else(|| Error::invalid("mwright-profile needs nus"))?,
                }
            }
        };
        Ok(Scenario {
            name: self.name,
            description: self.description,
            problem,
            x_min: self.grid.x_min,
            x_max: self.grid.x_max,
            dx: self.grid.dx,
            times: self.times,
            tol: self.tol,
            oracle: self.oracle,
            fd: self.fd,
            output_dir: self.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        })
    }
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        let (problem, nu, nus, f, g) = match &s.problem {
            Problem::Cauchy { order, f, g } => {
                (ProblemKind::Cauchy, Some(order.nu()), None, Some(f.clone()), Some(g.clone()))
            }
            Problem::MWrightProfile { nus } => {
                (ProblemKind::MwrightProfile, None, Some(nus.clone()), None, None)
            }
        };
        ScenarioFile {
            name: s.name.clone(),
            description: s.description.clone(),
            problem,
            nu,
            alpha: None,
            nus,
            times: s.times.clone(),
            tol: s.tol,
            oracle: s.oracle,
            grid: GridSection { x_min: s.x_min, x_max: s.x_max, dx: s.dx },
            f,
            g,
            fd: s.fd,
            output_dir: None,
        }
    }
}
