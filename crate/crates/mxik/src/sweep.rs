//! One motion solved under several units and attenuation values.

use std::path::Path;

use mxik_core::catalog::MotionSpec;
use mxik_core::kinematics::{LengthUnit, RobotModel, TaskComponent};
use mxik_core::{solve, IkConfig, InverseMethod, JacobianType};
use serde::Serialize;

use crate::benchmark::{models_in_units, path_deviation};
use crate::svg::{plot_paths, Series};

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub method: InverseMethod,
    pub jacobian: JacobianType,
    pub alphas: Vec<f64>,
    pub units: Vec<LengthUnit>,
    pub max_iterations: usize,
    pub tol_pos_mm: f64,
    pub tol_ori_deg: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRun {
    pub unit: String,
    pub alpha: f64,
    pub status: String,
    pub iterations: usize,
    pub position_error_mm: Option<f64>,
    pub orientation_error_deg: Option<f64>,
    /// Poses in the run unit, angles in radians.
    #[serde(skip)]
    pub poses: Vec<[f64; 6]>,
    #[serde(skip)]
    pub path_m: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub robot: String,
    pub method: String,
    pub jacobian: String,
    pub runs: Vec<SweepRun>,
    /// Largest deviation (m) from the first unit's path, per alpha; `None`
    /// when iteration counts differ or a run failed.
    pub max_deviation_m: Vec<(f64, Option<f64>)>,
}

pub fn run_sweep(base: &RobotModel, motion: &MotionSpec, cfg: &SweepConfig) -> SweepSummary {
    let models = models_in_units(base, &cfg.units);
    let mut runs = Vec::new();
    for (model, &unit) in models.iter().zip(&cfg.units) {
        let m = motion.in_unit(base.unit(), model);
        let to_m = unit.factor_to(LengthUnit::M);
        for &alpha in &cfg.alphas {
            let ik = IkConfig::new(
                cfg.jacobian,
                cfg.method,
                cfg.tol_pos_mm * LengthUnit::Mm.factor_to(unit),
                cfg.tol_ori_deg.to_radians(),
            )
            .with_attenuation(alpha)
            .with_max_iterations(cfg.max_iterations);
            let run = match solve(model, &m.q0, &m.target, &ik) {
                Ok(r) => SweepRun {
                    unit: unit.symbol().into(),
                    alpha,
                    status: if r.converged { "solved" } else { "unsolved" }.into(),
                    iterations: r.iterations,
                    position_error_mm: Some(r.final_position_error * unit.factor_to(LengthUnit::Mm)),
                    orientation_error_deg: Some(r.final_orientation_error.to_degrees()),
                    poses: r.trajectory.iter().map(|p| p.as_array()).collect(),
                    path_m: r.trajectory.iter().map(|p| p.scale_position(to_m).position).collect(),
                },
                Err(e) => SweepRun {
                    unit: unit.symbol().into(),
                    alpha,
                    status: format!("error: {e}"),
                    iterations: e.iteration().unwrap_or(0),
                    position_error_mm: None,
                    orientation_error_deg: None,
                    poses: Vec::new(),
                    path_m: Vec::new(),
                },
            };
            runs.push(run);
        }
    }
    let max_deviation_m = cfg
        .alphas
        .iter()
        .map(|&alpha| {
            let same: Vec<&SweepRun> = runs.iter().filter(|r| r.alpha == alpha).collect();
            let dev = same.iter().try_fold(0.0f64, |acc, r| {
                if r.path_m.is_empty() {
                    return None;
                }
                path_deviation(&same[0].path_m, &r.path_m).map(|d| acc.max(d))
            });
            (alpha, dev)
        })
        .collect();
    SweepSummary {
        robot: base.name().into(),
        method: cfg.method.label().into(),
        jacobian: cfg.jacobian.label().into(),
        runs,
        max_deviation_m,
    }
}

const TRAJECTORY_HEADER: [&str; 10] = ["iteration", "x", "y", "z", "roll", "pitch", "yaw", "x_m", "y_m", "z_m"];

/// Writes `traj_<unit>_a<alpha>.csv`, `paths_<unit>.svg` and `summary.json`.
pub fn write_sweep(summary: &SweepSummary, planar: bool, dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)?;
    for run in &summary.runs {
        let path = dir.join(format!("traj_{}_a{}.csv", run.unit, run.alpha));
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(TRAJECTORY_HEADER)?;
        for (i, (p, m)) in run.poses.iter().zip(&run.path_m).enumerate() {
            let mut rec = vec![i.to_string()];
            rec.extend(p.iter().chain(m.iter()).map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    let units: Vec<&str> = summary.runs.iter().map(|r| r.unit.as_str()).fold(Vec::new(), |mut v, u| {
        if !v.contains(&u) {
            v.push(u);
        }
        v
    });
    for unit in units {
        let series: Vec<Series<'_>> = summary
            .runs
            .iter()
            .filter(|r| r.unit == unit)
            .map(|r| Series {
                label: format!("alpha = {} ({}, {} it)", r.alpha, r.status, r.iterations),
                points: &r.path_m,
            })
            .collect();
        let title = format!("{} {} / {} in {unit} (axes in m)", summary.robot, summary.jacobian, summary.method);
        std::fs::write(dir.join(format!("paths_{unit}.svg")), plot_paths(&title, &series, planar))?;
    }
    std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(summary)?)?;
    Ok(())
}

/// True when the task has no Z row, which is how planar arms are described.
pub fn is_planar(model: &RobotModel) -> bool {
    !model.task().contains(&TaskComponent::Z)
}
