use std::path::PathBuf;

use super::{FdResolution, Problem, Scenario};
use crate::error::{Error, Result};
use crate::green::FracOrder;
use crate::signal::Signal;

struct Entry {
    name: &'static str,
    description: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry {
        name: "fig5-mwright",
        description: "M-Wright functions M_nu(|x|) on |x| <= 5 for nu = 0, 1/4, 3/8, 1/2, 5/8, 3/4",
    },
    Entry {
        name: "fig6-delta-nu065",
        description: "fundamental solution (f = delta, g = 0) for nu = 0.65 at t = 0.25, 0.5, 0.75, 1",
    },
    Entry {
        name: "fig7-delta-nu075",
        description: "fundamental solution (f = delta, g = 0) for nu = 0.75 at t = 0.25, 0.5, 0.75, 1",
    },
    Entry {
        name: "fig8-delta-nu085",
        description: "fundamental solution (f = delta, g = 0) for nu = 0.85 at t = 0.25, 0.5, 0.75, 1",
    },
    Entry {
        name: "fig9-box-nu050",
        description:
            "box signal on [-1, 1] under standard diffusion (nu = 0.5) at t = 0.5, 1 on 0 <= x <= 3.5",
    },
    Entry {
        name: "fig10-box-nu075",
        description: "box signal on [-1, 1] for nu = 0.75 at t = 0.5, 1 on 0 <= x <= 3.5",
    },
    Entry {
        name: "fig11-box-nu100",
        description:
            "box signal on [-1, 1] under the standard wave equation (nu = 1) at t = 0.5, 1 on 0 <= x <= 3.5",
    },
];

/// Names and one-line descriptions of the built-in scenarios.
pub fn list_scenarios() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|e| (e.name, e.description)).collect()
}

fn cauchy(
    name: &str,
    description: &str,
    nu: f64,
    f: Signal,
    window: (f64, f64),
    times: Vec<f64>,
) -> Result<Scenario> {
    Ok(Scenario {
        name: name.to_string(),
        description: description.to_string(),
        problem: Problem::Cauchy { order: FracOrder::from_nu(nu)?, f, g: Signal::Zero },
        x_min: window.0,
        x_max: window.1,
        dx: 0.01,
        times,
        tol: 1e-10,
        oracle: false,
        fd: FdResolution::default(),
        output_dir: PathBuf::from("out"),
    })
}

/// Looks up a built-in scenario by name.
pub fn builtin(name: &str) -> Result<Scenario> {
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| {
        Error::invalid(format!(
            "unknown scenario {name:?}; built-ins are {}",
            ENTRIES.iter().map(|e| e.name).collect::<Vec<_>>().join(", ")
        ))
    })?;
    let delta_times = vec![0.25, 0.5, 0.75, 1.0];
    let box_times = vec![0.5, 1.0];
    let (d, bx) = (Signal::unit_delta(), Signal::unit_box());
    let desc = entry.description;
    match name {
        "fig5-mwright" => Ok(Scenario {
            name: name.to_string(),
            description: desc.to_string(),
            problem: Problem::MWrightProfile { nus: vec![0.0, 0.25, 0.375, 0.5, 0.625, 0.75] },
            x_min: -5.0,
            x_max: 5.0,
            dx: 0.01,
            times: vec![1.0],
            tol: 1e-10,
            oracle: false,
            fd: FdResolution::default(),
            output_dir: PathBuf::from("out"),
        }),
        "fig6-delta-nu065" => cauchy(name, desc, 0.65, d, (-3.0, 3.0), delta_times),
        "fig7-delta-nu075" => cauchy(name, desc, 0.75, d, (-3.0, 3.0), delta_times),
        "fig8-delta-nu085" => cauchy(name, desc, 0.85, d, (-3.0, 3.0), delta_times),
        "fig9-box-nu050" => cauchy(name, desc, 0.5, bx, (0.0, 3.5), box_times),
        "fig10-box-nu075" => cauchy(name, desc, 0.75, bx, (0.0, 3.5), box_times),
        "fig11-box-nu100" => cauchy(name, desc, 1.0, bx, (0.0, 3.5), box_times),
        _ => unreachable!("every listed entry has a definition"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_contains_every_builtin() {
        let names: Vec<_> = list_scenarios().into_iter().map(|(n, _)| n).collect();
        assert!(names.len() >= 7);
        assert!(names.contains(&"fig9-box-nu050"));
        assert!(names.contains(&"fig6-delta-nu065"));
    }

    #[test]
    fn every_builtin_validates() {
        for (name, _) in list_scenarios() {
            let s = builtin(name).unwrap();
            s.validate().unwrap();
            assert_eq!(s.name, name);
        }
        assert!(builtin("fig99").is_err());
    }
}
