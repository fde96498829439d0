//! Random-motion benchmark across inverse methods, Jacobian types and units.

use std::time::Instant;

use mxik_core::catalog::{random_motions, CatalogError, MotionSpec};
use mxik_core::kinematics::{rescale_units, LengthUnit, RobotModel};
use mxik_core::math::rad_to_deg;
use mxik_core::{solve, IkConfig, InverseMethod, JacobianType, JointVector};
use rayon::prelude::*;
use serde::Serialize;

/// Pointwise position tolerance, in metres, for two paths to count as identical.
pub const PATH_TOLERANCE_M: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub count: usize,
    pub seed: u64,
    pub methods: Vec<InverseMethod>,
    pub jacobians: Vec<JacobianType>,
    pub units: Vec<LengthUnit>,
    pub alpha: f64,
    pub max_iterations: usize,
    pub tol_pos_mm: f64,
    pub tol_ori_deg: f64,
    pub path_tolerance_m: f64,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            count: 100,
            seed: 1,
            methods: InverseMethod::ALL.to_vec(),
            jacobians: JacobianType::ALL.to_vec(),
            units: LengthUnit::ALL.to_vec(),
            alpha: 1.0,
            max_iterations: 500,
            tol_pos_mm: 1.0,
            tol_ori_deg: 1.0,
            path_tolerance_m: PATH_TOLERANCE_M,
        }
    }
}

impl BenchmarkConfig {
    pub fn ik_config(&self, jacobian: JacobianType, method: InverseMethod, unit: LengthUnit) -> IkConfig {
        IkConfig::new(
            jacobian,
            method,
            self.tol_pos_mm * LengthUnit::Mm.factor_to(unit),
            self.tol_ori_deg.to_radians(),
        )
        .with_attenuation(self.alpha)
        .with_max_iterations(self.max_iterations)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Solved,
    Unsolved,
    Failed,
}

/// One solver run, with positions converted to metres.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub iterations: usize,
    pub position_error_mm: f64,
    pub orientation_error_deg: f64,
    pub wall_ms: f64,
    pub path_m: Vec<[f64; 3]>,
}

/// A model in each requested unit, converted once.
pub fn models_in_units(base: &RobotModel, units: &[LengthUnit]) -> Vec<RobotModel> {
    let q = JointVector::zeros(base.dof());
    units
        .iter()
        .map(|&u| rescale_units(base, &q, u).expect("zero joints are valid").0)
        .collect()
}

pub fn run_one(
    base_unit: LengthUnit,
    model: &RobotModel,
    motion: &MotionSpec,
    cfg: &IkConfig,
) -> RunOutcome {
    let m = motion.in_unit(base_unit, model);
    let to_mm = model.unit().factor_to(LengthUnit::Mm);
    let to_m = model.unit().factor_to(LengthUnit::M);
    let start = Instant::now();
    let result = solve(model, &m.q0, &m.target, cfg);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(r) => RunOutcome {
            status: if r.converged { RunStatus::Solved } else { RunStatus::Unsolved },
            iterations: r.iterations,
            position_error_mm: r.final_position_error * to_mm,
            orientation_error_deg: rad_to_deg(r.final_orientation_error),
            wall_ms,
            path_m: r.trajectory.iter().map(|p| p.scale_position(to_m).position).collect(),
        },
        Err(_) => RunOutcome {
            status: RunStatus::Failed,
            iterations: 0,
            position_error_mm: f64::NAN,
            orientation_error_deg: f64::NAN,
            wall_ms,
            path_m: Vec::new(),
        },
    }
}

/// Largest pointwise position deviation between two paths, or `None` when
/// their lengths differ.
pub fn path_deviation(a: &[[f64; 3]], b: &[[f64; 3]]) -> Option<f64> {
    (a.len() == b.len()).then(|| {
        a.iter()
            .zip(b)
            .flat_map(|(p, q)| (0..3).map(move |k| (p[k] - q[k]).abs()))
            .fold(0.0, f64::max)
    })
}

/// All runs solved, with paths of equal length that agree within `tol` metres.
pub fn paths_identical(runs: &[RunOutcome], tol: f64) -> bool {
    let Some(first) = runs.first() else { return false };
    runs.iter().all(|r| {
        r.status == RunStatus::Solved
            && path_deviation(&first.path_m, &r.path_m).is_some_and(|d| d <= tol)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitCell {
    pub method: String,
    pub jacobian: String,
    pub unit: String,
    pub solved_percent: f64,
    pub mean_iterations: Option<f64>,
    pub mean_position_error_mm: Option<f64>,
    pub mean_orientation_error_deg: Option<f64>,
    pub mean_wall_time_ms: Option<f64>,
    pub solved: usize,
    pub unsolved: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathCell {
    pub method: String,
    pub jacobian: String,
    pub identical_paths_percent: f64,
    pub identical: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub robot: String,
    pub count: usize,
    pub seed: u64,
    pub alpha: f64,
    pub max_iterations: usize,
    pub tol_pos_mm: f64,
    pub tol_ori_deg: f64,
    pub path_tolerance_m: f64,
    pub units: Vec<String>,
    pub cells: Vec<UnitCell>,
    pub paths: Vec<PathCell>,
}

impl BenchmarkReport {
    pub fn cell(&self, method: InverseMethod, jacobian: JacobianType, unit: LengthUnit) -> Option<&UnitCell> {
        self.cells
            .iter()
            .find(|c| c.method == method.label() && c.jacobian == jacobian.label() && c.unit == unit.symbol())
    }

    pub fn identical_paths(&self, method: InverseMethod, jacobian: JacobianType) -> Option<f64> {
        self.paths
            .iter()
            .find(|c| c.method == method.label() && c.jacobian == jacobian.label())
            .map(|c| c.identical_paths_percent)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn percent(k: usize, n: usize) -> f64 {
    100.0 * k as f64 / n as f64
}

pub fn run_benchmark(base: &RobotModel, cfg: &BenchmarkConfig) -> Result<BenchmarkReport, CatalogError> {
    let motions = random_motions(base, cfg.count, cfg.seed)?;
    Ok(run_motions(base, &motions, cfg))
}

/// Runs the given motions (expressed in `base`'s unit).
pub fn run_motions(base: &RobotModel, motions: &[MotionSpec], cfg: &BenchmarkConfig) -> BenchmarkReport {
    let models = models_in_units(base, &cfg.units);
    let n = motions.len().max(1);
    let mut cells = Vec::new();
    let mut paths = Vec::new();
    for &jacobian in &cfg.jacobians {
        for &method in &cfg.methods {
            // outcomes[motion][unit]
            let outcomes: Vec<Vec<RunOutcome>> = motions
                .par_iter()
                .map(|mo| {
                    models
                        .iter()
                        .zip(&cfg.units)
                        .map(|(m, &u)| run_one(base.unit(), m, mo, &cfg.ik_config(jacobian, method, u)))
                        .collect()
                })
                .collect();
            for (ui, unit) in cfg.units.iter().enumerate() {
                let runs: Vec<&RunOutcome> = outcomes.iter().map(|o| &o[ui]).collect();
                let solved: Vec<&&RunOutcome> = runs.iter().filter(|r| r.status == RunStatus::Solved).collect();
                let count = |s| runs.iter().filter(|r| r.status == s).count();
                cells.push(UnitCell {
                    method: method.label().into(),
                    jacobian: jacobian.label().into(),
                    unit: unit.symbol().into(),
                    solved_percent: percent(solved.len(), n),
                    mean_iterations: mean(solved.iter().map(|r| r.iterations as f64)),
                    mean_position_error_mm: mean(solved.iter().map(|r| r.position_error_mm)),
                    mean_orientation_error_deg: mean(solved.iter().map(|r| r.orientation_error_deg)),
                    mean_wall_time_ms: mean(solved.iter().map(|r| r.wall_ms)),
                    solved: solved.len(),
                    unsolved: count(RunStatus::Unsolved),
                    failed: count(RunStatus::Failed),
                });
            }
            let identical = outcomes
                .iter()
                .filter(|o| paths_identical(o, cfg.path_tolerance_m))
                .count();
            paths.push(PathCell {
                method: method.label().into(),
                jacobian: jacobian.label().into(),
                identical_paths_percent: percent(identical, n),
                identical,
            });
        }
    }
    BenchmarkReport {
        robot: base.name().into(),
        count: motions.len(),
        seed: cfg.seed,
        alpha: cfg.alpha,
        max_iterations: cfg.max_iterations,
        tol_pos_mm: cfg.tol_pos_mm,
        tol_ori_deg: cfg.tol_ori_deg,
        path_tolerance_m: cfg.path_tolerance_m,
        units: cfg.units.iter().map(|u| u.symbol().into()).collect(),
        cells,
        paths,
    }
}

/// CSV columns, in order.
pub const CSV_HEADER: [&str; 12] = [
    "method",
    "jacobian",
    "unit",
    "solved_percent",
    "mean_iterations",
    "mean_position_error_mm",
    "mean_orientation_error_deg",
    "mean_wall_time_ms",
    "solved",
    "unsolved",
    "failed",
    "identical_paths_percent",
];

pub fn write_csv<W: std::io::Write>(report: &BenchmarkReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
    for c in &report.cells {
        let ips = report
            .paths
            .iter()
            .find(|p| p.method == c.method && p.jacobian == c.jacobian)
            .map(|p| p.identical_paths_percent)
            .unwrap_or(f64::NAN);
        w.write_record([
            c.method.clone(),
            c.jacobian.clone(),
            c.unit.clone(),
            format!("{:.1}", c.solved_percent),
            opt(c.mean_iterations),
            opt(c.mean_position_error_mm),
            opt(c.mean_orientation_error_deg),
            opt(c.mean_wall_time_ms),
            c.solved.to_string(),
            c.unsolved.to_string(),
            c.failed.to_string(),
            format!("{ips:.1}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Fixed-width table, one block per Jacobian type and method.
pub fn render_table(report: &BenchmarkReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let f = |v: Option<f64>, p: usize| v.map_or("-".to_string(), |x| format!("{x:.p$}"));
    writeln!(
        s,
        "{} | {} motions | seed {} | alpha {} | max-iter {} | tol {} mm / {} deg",
        report.robot, report.count, report.seed, report.alpha, report.max_iterations, report.tol_pos_mm, report.tol_ori_deg
    )
    .unwrap();
    for p in &report.paths {
        writeln!(s, "\n[{} / {}]  %IPs {:.1}", p.jacobian, p.method, p.identical_paths_percent).unwrap();
        writeln!(s, "  {:<4} {:>6} {:>8} {:>8} {:>8} {:>9}", "unit", "%Sol", "iter", "eP(mm)", "eO(deg)", "t(ms)").unwrap();
        for c in report.cells.iter().filter(|c| c.method == p.method && c.jacobian == p.jacobian) {
            writeln!(
                s,
                "  {:<4} {:>6.1} {:>8} {:>8} {:>8} {:>9}",
                c.unit,
                c.solved_percent,
                f(c.mean_iterations, 1),
                f(c.mean_position_error_mm, 3),
                f(c.mean_orientation_error_deg, 3),
                f(c.mean_wall_time_ms, 3)
            )
            .unwrap();
        }
    }
    s
}
