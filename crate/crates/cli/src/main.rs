use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracwave::green::green_cauchy_tol;
use fracwave::scenario::{builtin, list_scenarios, run_scenario, Scenario};
use fracwave::specfun::{m_wright, MWrightOrder, DEFAULT_TOL};
use fracwave::{Error, FracOrder, Result};

/// Time-fractional diffusion-wave scenarios, M-Wright functions and Green functions.
#[derive(Parser)]
#[command(name = "fracwave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a built-in scenario.
    Run {
        /// Path to a scenario file, or the name of a built-in scenario.
        scenario: String,
        /// Output directory (overrides the scenario's).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluation tolerance (overrides the scenario's).
        #[arg(long)]
        tol: Option<f64>,
        /// Also run the finite-difference solver and report the discrepancy.
        #[arg(long)]
        oracle: bool,
    },
    /// List built-in scenarios.
    List,
    /// Evaluate a single value.
    #[command(subcommand)]
    Eval(Eval),
}

#[derive(Subcommand)]
enum Eval {
    /// M-Wright function M_ν(z).
    Mwright {
        #[arg(long)]
        nu: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Cauchy Green function G_C(x, t; ν).
    Green {
        #[arg(long)]
        nu: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn load(arg: &str) -> Result<Scenario> {
    let path = Path::new(arg);
    if path.is_file() {
        Scenario::from_path(path)
    } else if arg.ends_with(".toml") || arg.contains(std::path::MAIN_SEPARATOR) {
        Err(Error::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "scenario file not found"),
        })
    } else {
        builtin(arg)
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::List => {
            for (name, description) in list_scenarios() {
                println!("{name:<18} {description}");
            }
        }
        Command::Run { scenario, out, tol, oracle } => {
            let mut s = load(&scenario)?;
            if let Some(dir) = out {
                s.output_dir = dir;
            }
            if let Some(tol) = tol {
                s.tol = tol;
            }
            s.oracle |= oracle;
            let report = run_scenario(&s)?;
            for file in &report.files {
                println!("wrote {}", file.display());
            }
            for o in &report.oracle {
                println!("oracle t={} linf={:e} l2={:e}", o.t, o.linf, o.l2);
            }
        }
        Command::Eval(Eval::Mwright { nu, z, tol }) => {
            println!("{:.16e}", m_wright(MWrightOrder::new(nu)?, z, tol)?.value);
        }
        Command::Eval(Eval::Green { nu, x, t, tol }) => {
            println!("{:.16e}", green_cauchy_tol(FracOrder::from_nu(nu)?, x, t, tol)?);
        }
    }
    Ok(())
}

fn fail(kind: &str, code: u8, message: &str) -> ExitCode {
    eprintln!("error kind={kind} code={code}: {}", message.trim_end().replace('\n', " "));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return fail("usage", 1, &e.kind().to_string());
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.kind(), e.exit_code() as u8, &e.to_string()),
    }
}
