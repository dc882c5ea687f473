//! Implicit finite differences for ∂ᵅu/∂tᵅ = ∂²u/∂x² on a truncated line
//! with homogeneous Dirichlet ends.
//!
//! * 0 < α ≤ 1: L1 scheme in time at tₙ, backward (implicit) in space.
//! * 1 < α ≤ 2: L1 scheme applied to the velocity at t_{n-1/2}
//!   (Sun–Wu type), Crank–Nicolson in space.
//!
//! ∂²/∂x² is discretised either by the fourth-order compact stencil
//! (1 + δ²/12)⁻¹ δ²/dx² (default) or by plain central differences δ²/dx²;
//! both keep every step a single tridiagonal solve.
//!
//! The memory term is summed exactly over the full history, so each step
//! costs O(n·nodes). Steps are strictly sequential.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Provenance, SolutionField};
use crate::green::FracOrder;
use crate::signal::Signal;
use crate::specfun::{gamma, m_wright_tail_cutoff};

/// Minimum similarity widths added beyond the plotted window.
const FAR_FIELD_WIDTHS: f64 = 6.0;
const FAR_FIELD_EPS: f64 = 1e-10;

/// Spatial discretisation of ∂²/∂x².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// Fourth-order compact (Numerov) differences.
    #[default]
    Compact,
    /// Second-order central differences.
    Central,
}

impl Stencil {
    /// Weights (diagonal, off-diagonal) of the mass operator B in
    /// B·∂ᵅu = δ²u/dx².
    fn mass_weights(self) -> (f64, f64) {
        match self {
            Stencil::Compact => (10.0 / 12.0, 1.0 / 12.0),
            Stencil::Central => (1.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FDGrid {
    pub dx: f64,
    pub dt: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n_steps: usize,
    pub order: FracOrder,
    /// Store every k-th step; the final step is always stored.
    pub record_every: usize,
    pub stencil: Stencil,
}

impl FDGrid {
    pub fn new(order: FracOrder, x_min: f64, x_max: f64, dx: f64, dt: f64, n_steps: usize) -> Result<Self> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::invalid(format!("invalid grid: need x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if !(dx > 0.0) || !(dt > 0.0) || !dx.is_finite() || !dt.is_finite() {
            return Err(Error::invalid(format!(
                "invalid grid: dx and dt must be positive, got dx={dx}, dt={dt}"
            )));
        }
        if n_steps == 0 {
            return Err(Error::invalid("invalid grid: need at least one time step"));
        }
        let cells = (x_max - x_min) / dx;
        if (cells - cells.round()).abs() > 1e-6 * cells.max(1.0) {
            return Err(Error::invalid(format!(
                "invalid grid: x range {} is not a multiple of dx={dx}",
                x_max - x_min
            )));
        }
        Ok(Self { dx, dt, x_min, x_max, n_steps, order, record_every: n_steps, stencil: Stencil::default() })
    }

    /// Grid symmetric about the origin that covers |x| ≤ `half_width` plus a
    /// far-field margin of at least six similarity widths t_endᵛ, widened
    /// until the Green function has decayed below 10⁻¹⁰ there (sub-diffusive
    /// tails are long). Nodes sit at integer multiples of dx.
    pub fn covering(order: FracOrder, half_width: f64, t_end: f64, dx: f64, dt: f64) -> Result<Self> {
        if !(t_end > 0.0) || !(dt > 0.0) {
            return Err(Error::invalid("invalid grid: t_end and dt must be positive"));
        }
        let widths = match order.m_wright_order() {
            Ok(m) => FAR_FIELD_WIDTHS.max(m_wright_tail_cutoff(m, FAR_FIELD_EPS)),
            Err(_) => FAR_FIELD_WIDTHS,
        };
        let reach = half_width + widths * t_end.powf(order.nu());
        let cells = (reach / dx).ceil();
        let n_steps = (t_end / dt).round() as usize;
        if ((n_steps as f64) * dt - t_end).abs() > 1e-9 * t_end {
            return Err(Error::invalid(format!("invalid grid: t_end={t_end} is not a multiple of dt={dt}")));
        }
        Self::new(order, -cells * dx, cells * dx, dx, dt, n_steps)
    }

    pub fn recording_every(mut self, k: usize) -> Self {
        self.record_every = k.max(1);
        self
    }

    pub fn with_stencil(mut self, stencil: Stencil) -> Self {
        self.stencil = stencil;
        self
    }

    pub fn node_count(&self) -> usize {
        ((self.x_max - self.x_min) / self.dx).round() as usize + 1
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.node_count()).map(|i| self.x_min + i as f64 * self.dx).collect()
    }

    /// dtᵅ/dx², the mesh ratio of the scheme.
    pub fn mesh_ratio(&self) -> f64 {
        self.dt.powf(self.order.alpha()) / (self.dx * self.dx)
    }

    /// The implicit schemes are unconditionally stable; the predicate only
    /// rules out meshes the linear solves cannot represent.
    pub fn is_stable(&self) -> bool {
        let r = self.mesh_ratio();
        r.is_finite() && r > 0.0 && self.node_count() >= 5
    }
}

/// Factorised symmetric tridiagonal matrix with constant diagonal `d` and
/// off-diagonal `e` (Thomas algorithm).
struct Tridiagonal {
    e: f64,
    inv_pivot: Vec<f64>,
}

impl Tridiagonal {
    fn new(n: usize, d: f64, e: f64) -> Self {
        let mut inv_pivot = Vec::with_capacity(n);
        let mut prev = 0.0;
        for i in 0..n {
            let p = if i == 0 { d } else { d - e * e * prev };
            prev = 1.0 / p;
            inv_pivot.push(prev);
        }
        Self { e, inv_pivot }
    }

    fn solve(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        for i in 1..n {
            rhs[i] -= self.e * self.inv_pivot[i - 1] * rhs[i - 1];
        }
        rhs[n - 1] *= self.inv_pivot[n - 1];
        for i in (0..n - 1).rev() {
            rhs[i] = (rhs[i] - self.e * rhs[i + 1]) * self.inv_pivot[i];
        }
    }
}

fn initial_profile(signal: &Signal, nodes: &[f64], dx: f64, what: &str) -> Result<Vec<f64>> {
    signal.validate()?;
    match signal {
        Signal::Delta { location, weight } => {
            let s = (location - nodes[0]) / dx;
            let i = s.round();
            if (s - i).abs() > 1e-9 || i < 1.0 || i as usize >= nodes.len() - 1 {
                return Err(Error::DeltaNotRepresentable(format!(
                    "{what}: delta at {location} is not on an interior node of the grid (dx={dx})"
                )));
            }
            let mut u = vec![0.0; nodes.len()];
            u[i as usize] = weight / dx;
            Ok(u)
        }
        _ => Ok(nodes.iter().map(|&x| signal.cell_average(x, dx)).collect()),
    }
}

const HISTORY_CHUNK: usize = 256;

/// rhs += Σ_j weights[j] · history[j]. Parallel over space only; the time
/// recursion itself stays sequential.
fn add_history(rhs: &mut [f64], history: &[Vec<f64>], weights: &[f64]) {
    let chunk_sum = |(c, chunk): (usize, &mut [f64])| {
        let start = c * HISTORY_CHUNK;
        for (w, h) in weights.iter().zip(history) {
            let h = &h[start..start + chunk.len()];
            for (r, hi) in chunk.iter_mut().zip(h) {
                *r += w * hi;
            }
        }
    };
    if rayon::current_num_threads() > 1 {
        rhs.par_chunks_mut(HISTORY_CHUNK).enumerate().for_each(chunk_sum);
    } else {
        rhs.chunks_mut(HISTORY_CHUNK).enumerate().for_each(chunk_sum);
    }
}

/// out = B·v with B = tridiag(m1, m0, m1) and zero Dirichlet ends.
fn apply_mass(v: &[f64], (m0, m1): (f64, f64), out: &mut [f64]) {
    let n = v.len();
    for i in 0..n {
        let left = if i > 0 { v[i - 1] } else { 0.0 };
        let right = if i + 1 < n { v[i + 1] } else { 0.0 };
        out[i] = m0 * v[i] + m1 * (left + right);
    }
}

fn apply_laplacian(u: &[f64], inv_dx2: f64, out: &mut [f64]) {
    let n = u.len();
    for i in 0..n {
        let left = if i > 0 { u[i - 1] } else { 0.0 };
        let right = if i + 1 < n { u[i + 1] } else { 0.0 };
        out[i] = (left - 2.0 * u[i] + right) * inv_dx2;
    }
}

/// Solves the Cauchy problem with u(x,0) = f0 and, for α > 1, u_t(x,0) = g0.
pub fn fd_solve(grid: &FDGrid, f0: &Signal, g0: &Signal) -> Result<SolutionField> {
    if !grid.is_stable() {
        return Err(Error::UnstableGrid(format!(
            "mesh ratio dt^alpha/dx^2 = {:e} on {} nodes",
            grid.mesh_ratio(),
            grid.node_count()
        )));
    }
    let alpha = grid.order.alpha();
    if !grid.order.needs_velocity() && !g0.is_zero() {
        return Err(Error::invalid(format!(
            "an initial velocity only applies for alpha > 1, got alpha={alpha}"
        )));
    }
    let nodes = grid.nodes();
    let u0 = initial_profile(f0, &nodes, grid.dx, "initial value")?;
    let v0 = if g0.is_zero() {
        vec![0.0; nodes.len()]
    } else {
        initial_profile(g0, &nodes, grid.dx, "initial velocity")?
    };

    // interior unknowns; the two end nodes stay at zero
    let m = nodes.len() - 2;
    let inv_dx2 = 1.0 / (grid.dx * grid.dx);
    let dt = grid.dt;
    let mut u: Vec<f64> = u0[1..=m].to_vec();
    let psi: Vec<f64> = v0[1..=m].to_vec();

    let mut times = Vec::new();
    let mut rows = Vec::new();
    let record = |u: &[f64], rows: &mut Vec<Vec<f64>>| {
        let mut row = Vec::with_capacity(m + 2);
        row.push(0.0);
        row.extend_from_slice(u);
        row.push(0.0);
        rows.push(row);
    };

    // history of increments δⁿ = uⁿ - uⁿ⁻¹ (divided by dt in the wave branch)
    let mut history: Vec<Vec<f64>> = Vec::with_capacity(grid.n_steps);
    let mut rhs = vec![0.0; m];
    let mut scratch = vec![0.0; m];
    let mut lap = vec![0.0; m];
    let (m0, m1) = grid.stencil.mass_weights();
    let mut weights: Vec<f64> = Vec::with_capacity(grid.n_steps);

    if alpha <= 1.0 {
        let q = 1.0 - alpha;
        let b: Vec<f64> = (0..=grid.n_steps).map(|k| ((k + 1) as f64).powf(q) - (k as f64).powf(q)).collect();
        let c = dt.powf(-alpha) / gamma(2.0 - alpha);
        let solver = Tridiagonal::new(m, c * m0 + 2.0 * inv_dx2, c * m1 - inv_dx2);
        for n in 1..=grid.n_steps {
            // cB(uⁿ - uⁿ⁻¹) + cB Σ_{k=1}^{n-1} b_k δ^{n-k} = Δuⁿ
            scratch.copy_from_slice(&u);
            weights.clear();
            weights.extend((0..n - 1).map(|j| -c * b[n - 1 - j]));
            for v in scratch.iter_mut() {
                *v *= c;
            }
            add_history(&mut scratch, &history, &weights);
            apply_mass(&scratch, (m0, m1), &mut rhs);
            solver.solve(&mut rhs);
            let delta: Vec<f64> = rhs.iter().zip(&u).map(|(a, b)| a - b).collect();
            u.copy_from_slice(&rhs);
            history.push(delta);
            if n % grid.record_every == 0 || n == grid.n_steps {
                times.push(n as f64 * dt);
                record(&u, &mut rows);
            }
        }
    } else {
        let q = 2.0 - alpha;
        let a: Vec<f64> = (0..=grid.n_steps).map(|l| ((l + 1) as f64).powf(q) - (l as f64).powf(q)).collect();
        let c = dt.powf(1.0 - alpha) / gamma(3.0 - alpha);
        let diag = c * a[0] / dt;
        let solver = Tridiagonal::new(m, diag * m0 + inv_dx2, diag * m1 - 0.5 * inv_dx2);
        for n in 1..=grid.n_steps {
            // cB[a₀δⁿ - Σ_{k=1}^{n-1}(a_{n-k-1} - a_{n-k})δᵏ - a_{n-1}ψ] = ½Δ(uⁿ + uⁿ⁻¹)
            for i in 0..m {
                scratch[i] = diag * u[i] + c * a[n - 1] * psi[i];
            }
            weights.clear();
            weights.extend((0..n - 1).map(|j| c * (a[n - j - 2] - a[n - j - 1])));
            add_history(&mut scratch, &history, &weights);
            apply_mass(&scratch, (m0, m1), &mut rhs);
            apply_laplacian(&u, inv_dx2, &mut lap);
            for (r, l) in rhs.iter_mut().zip(&lap) {
                *r += 0.5 * l;
            }
            solver.solve(&mut rhs);
            let delta: Vec<f64> = rhs.iter().zip(&u).map(|(a, b)| (a - b) / dt).collect();
            u.copy_from_slice(&rhs);
            history.push(delta);
            if n % grid.record_every == 0 || n == grid.n_steps {
                times.push(n as f64 * dt);
                record(&u, &mut rows);
            }
        }
    }

    SolutionField::new(grid.order.nu(), nodes, times, rows, Provenance::FiniteDifference)
}
