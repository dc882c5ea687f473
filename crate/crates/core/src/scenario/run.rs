use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::svg::{LinePlot, Series};
use super::{FdResolution, Problem, Scenario};
use crate::error::{Error, Result};
use crate::field::SolutionField;
use crate::fracops::{fd_solve, FDGrid};
use crate::green::FracOrder;
use crate::signal::Signal;
use crate::solver::solve_cauchy;
use crate::specfun::{m_wright, MWrightOrder};

/// Discrepancy between the analytic solution and the finite-difference
/// oracle at one output time, over the scenario's output grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleStats {
    pub t: f64,
    pub linf: f64,
    /// sqrt(∫ (u_analytic - u_fd)² dx), trapezoidal.
    pub l2: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub oracle: Vec<OracleStats>,
}

/// Fixed-width, round-trip exact (17 significant digits) number format.
fn num(v: f64) -> String {
    // fold -0 into 0 so signs never depend on evaluation order
    format!("{:.16e}", v + 0.0)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn describe(signal: &Signal) -> String {
    match signal {
        Signal::Zero => "zero".into(),
        Signal::Delta { location, weight } => format!("delta location={location} weight={weight}"),
        Signal::Box { left, right, height } => format!("box left={left} right={right} height={height}"),
        Signal::Sampled(s) => format!("sampled x0={} dx={} samples={}", s.x0, s.dx, s.values.len()),
    }
}

fn header(s: &Scenario, t: Option<f64>, extra: &[String]) -> String {
    let mut h = String::new();
    let _ = writeln!(h, "# fracwave {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(h, "# scenario: {}", s.name);
    if !s.description.is_empty() {
        let _ = writeln!(h, "# description: {}", s.description);
    }
    match &s.problem {
        Problem::Cauchy { order, f, g } => {
            let _ = writeln!(h, "# problem: cauchy");
            let _ = writeln!(h, "# nu: {}", order.nu());
            let _ = writeln!(h, "# alpha: {}", order.alpha());
            let _ = writeln!(h, "# f: {}", describe(f));
            let _ = writeln!(h, "# g: {}", describe(g));
        }
        Problem::MWrightProfile { nus } => {
            let _ = writeln!(h, "# problem: mwright-profile");
            let _ = writeln!(h, "# nus: {nus:?}");
        }
    }
    if let Some(t) = t {
        let _ = writeln!(h, "# t: {t}");
    }
    let _ = writeln!(h, "# tol: {:e}", s.tol);
    let _ =
        writeln!(h, "# grid: x_min={} x_max={} dx={} points={}", s.x_min, s.x_max, s.dx, s.x_grid().len());
    for line in extra {
        let _ = writeln!(h, "# {line}");
    }
    let _ = writeln!(h, "# scenario file:");
    for line in s.to_toml().lines() {
        let _ = writeln!(h, "#   {line}");
        h.truncate(h.trim_end_matches([' ', '\n']).len());
        h.push('\n');
    }
    h
}

fn stem(s: &Scenario, t: f64) -> String {
    format!("{}_t{}", s.name, t)
}

/// Finite-difference solution interpolated onto the scenario's output grid,
/// one row per scenario time.
fn fd_on_grid(
    order: FracOrder,
    f: &Signal,
    g: &Signal,
    s: &Scenario,
    fd: FdResolution,
) -> Result<Vec<Vec<f64>>> {
    let steps: Vec<u64> = s
        .times
        .iter()
        .map(|t| {
            let n = (t / fd.dt).round();
            if n < 1.0 || (n * fd.dt - t).abs() > 1e-9 * t {
                Err(Error::invalid(format!(
                    "invalid grid: output time {t} is not a positive multiple of the oracle dt={}",
                    fd.dt
                )))
            } else {
                Ok(n as u64)
            }
        })
        .collect::<Result<_>>()?;
    let every = steps.iter().fold(0, |a, b| gcd(a, *b));
    let half_width = s.x_min.abs().max(s.x_max.abs());
    let t_end = *s.times.last().expect("validated non-empty");
    let grid = FDGrid::covering(order, half_width, t_end, fd.dx, fd.dt)?.recording_every(every as usize);
    let field: SolutionField = fd_solve(&grid, f, g)?;
    let xs = s.x_grid();
    Ok(s.times
        .iter()
        .map(|t| {
            let k = field.time_index(*t).expect("recorded time");
            xs.iter().map(|x| field.interpolate(k, *x)).collect()
        })
        .collect())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn stats(t: f64, xs: &[f64], a: &[f64], b: &[f64]) -> OracleStats {
    let d: Vec<f64> = a.iter().zip(b).map(|(p, q)| (p - q).abs()).collect();
    let linf = d.iter().fold(0.0f64, |m, v| m.max(*v));
    let l2 = xs
        .windows(2)
        .zip(d.windows(2))
        .map(|(x, e)| 0.5 * (e[0] * e[0] + e[1] * e[1]) * (x[1] - x[0]))
        .sum::<f64>()
        .sqrt();
    OracleStats { t, linf, l2 }
}

fn cauchy_parts(s: &Scenario) -> Result<(FracOrder, &Signal, &Signal)> {
    match &s.problem {
        Problem::Cauchy { order, f, g } => Ok((*order, f, g)),
        Problem::MWrightProfile { .. } => Err(Error::invalid("oracle mode applies to cauchy problems only")),
    }
}

/// Solves a Cauchy scenario both analytically and with the finite-difference
/// scheme at resolution `fd`, and reports the discrepancy per output time.
pub fn oracle_compare(s: &Scenario, fd: FdResolution) -> Result<Vec<OracleStats>> {
    s.validate()?;
    let (order, f, g) = cauchy_parts(s)?;
    let xs = s.x_grid();
    let analytic = solve_cauchy(order, f, g, &xs, &s.times, s.tol)?;
    let numeric = fd_on_grid(order, f, g, s, fd)?;
    Ok(s.times.iter().enumerate().map(|(k, t)| stats(*t, &xs, &analytic.values[k], &numeric[k])).collect())
}

/// Runs a scenario and writes its CSV, SVG and (in oracle mode) comparison
/// files into `s.output_dir`.
pub fn run_scenario(s: &Scenario) -> Result<RunReport> {
    s.validate()?;
    fs::create_dir_all(&s.output_dir).map_err(|source| Error::Io { path: s.output_dir.clone(), source })?;
    match &s.problem {
        Problem::Cauchy { .. } => run_cauchy(s),
        Problem::MWrightProfile { nus } => run_profile(s, nus),
    }
}

fn run_cauchy(s: &Scenario) -> Result<RunReport> {
    let (order, f, g) = cauchy_parts(s)?;
    let xs = s.x_grid();
    let field = solve_cauchy(order, f, g, &xs, &s.times, s.tol)?;
    let mut report = RunReport::default();
    let initial: Option<Vec<f64>> = xs.iter().map(|x| f.value_at(*x)).collect();
    for (k, t) in s.times.iter().enumerate() {
        let row = &field.values[k];
        let mut csv = header(s, Some(*t), &[format!("provenance: {}", field.provenance)]);
        csv.push_str("x,u\n");
        for (x, u) in xs.iter().zip(row) {
            let _ = writeln!(csv, "{},{}", num(*x), num(*u));
        }
        let path = s.output_dir.join(format!("{}.csv", stem(s, *t)));
        write_file(&path, &csv)?;
        report.files.push(path);

        let mut series =
            vec![Series { label: format!("u(x, t={t})"), xs: xs.clone(), ys: row.clone(), dashed: false }];
        if let Some(init) = &initial {
            series.push(Series { label: "u(x, 0)".into(), xs: xs.clone(), ys: init.clone(), dashed: true });
        }
        let plot = LinePlot {
            title: format!("{}: nu = {}, t = {}", s.name, order.nu(), t),
            x_label: "x".into(),
            y_label: "u(x, t)".into(),
            series,
        };
        let path = s.output_dir.join(format!("{}.svg", stem(s, *t)));
        write_file(&path, &plot.render())?;
        report.files.push(path);
    }

    if s.oracle {
        let numeric = fd_on_grid(order, f, g, s, s.fd)?;
        let fd_line = format!("oracle: finite differences dx={} dt={} stencil=compact", s.fd.dx, s.fd.dt);
        let mut summary = header(s, None, std::slice::from_ref(&fd_line));
        summary.push_str("t,linf,l2\n");
        for (k, t) in s.times.iter().enumerate() {
            let st = stats(*t, &xs, &field.values[k], &numeric[k]);
            let mut csv = header(s, Some(*t), std::slice::from_ref(&fd_line));
            csv.push_str("x,u_analytic,u_fd,abs_diff\n");
            for ((x, a), b) in xs.iter().zip(&field.values[k]).zip(&numeric[k]) {
                let _ = writeln!(csv, "{},{},{},{}", num(*x), num(*a), num(*b), num((a - b).abs()));
            }
            let path = s.output_dir.join(format!("{}_oracle.csv", stem(s, *t)));
            write_file(&path, &csv)?;
            report.files.push(path);
            let _ = writeln!(summary, "{},{},{}", t, num(st.linf), num(st.l2));
            report.oracle.push(st);
        }
        let path = s.output_dir.join(format!("{}_summary.csv", s.name));
        write_file(&path, &summary)?;
        report.files.push(path);
    }
    Ok(report)
}

fn run_profile(s: &Scenario, nus: &[f64]) -> Result<RunReport> {
    let xs = s.x_grid();
    let mut report = RunReport::default();
    for t in &s.times {
        // at t = 1 these are the shapes 2·G_C(x, 1); other times rescale x
        let rows: Vec<Vec<f64>> = nus
            .iter()
            .map(|nu| {
                let order = MWrightOrder::new(*nu)?;
                let scale = t.powf(*nu);
                xs.par_iter()
                    .map(|x| Ok(m_wright(order, x.abs() / scale, s.tol)?.value))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        let mut csv = header(s, Some(*t), &["columns: M_nu(|x| / t^nu) for each nu".into()]);
        csv.push('x');
        for nu in nus {
            let _ = write!(csv, ",M_{nu}");
        }
        csv.push('\n');
        for (i, x) in xs.iter().enumerate() {
            csv.push_str(&num(*x));
            for col in &rows {
                csv.push(',');
                csv.push_str(&num(col[i]));
            }
            csv.push('\n');
        }
        let path = s.output_dir.join(format!("{}.csv", stem(s, *t)));
        write_file(&path, &csv)?;
        report.files.push(path);

        let plot = LinePlot {
            title: format!("{}: M_nu(|x|), t = {}", s.name, t),
            x_label: "x".into(),
            y_label: "M_nu(|x|)".into(),
            series: nus
                .iter()
                .zip(&rows)
                .map(|(nu, col)| Series {
                    label: format!("nu = {nu}"),
                    xs: xs.clone(),
                    ys: col.clone(),
                    dashed: false,
                })
                .collect(),
        };
        let path = s.output_dir.join(format!("{}.svg", stem(s, *t)));
        write_file(&path, &plot.render())?;
        report.files.push(path);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_has_17_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-0.0), "0.0000000000000000e0");
        assert_eq!(num(1.0).parse::<f64>().unwrap(), 1.0);
        let v = 0.520_499_877_813_046_5;
        assert_eq!(num(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn gcd_of_steps() {
        assert_eq!([250u64, 500, 750, 1000].iter().fold(0, |a, b| gcd(a, *b)), 250);
        assert_eq!(gcd(0, 7), 7);
    }

    #[test]
    fn l2_of_constant_difference() {
        let xs = [0.0, 0.5, 1.0];
        let st = stats(1.0, &xs, &[1.0, 1.0, 1.0], &[0.5, 0.5, 0.5]);
        assert_eq!(st.linf, 0.5);
        assert!((st.l2 - 0.5).abs() < 1e-15);
    }
}
