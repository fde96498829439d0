use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mxik::benchmark::{render_table, run_motions, write_csv, BenchmarkConfig};
use mxik::motion_file::{parse_motions, write_motions, MotionList};
use mxik::settings::Settings;
use mxik::sweep::{is_planar, run_sweep, write_sweep, SweepConfig};
use mxik::{model_file, resolve_robot, sanity};
use mxik_core::baseline::BaselineParams;
use mxik_core::catalog::{motion, random_motions, MotionSpec};
use mxik_core::kinematics::{forward_kinematics, Pose};
use mxik_core::{InverseMethod, JacobianType, RobotModel};

#[derive(Debug, Parser)]
#[command(name = "mxik", version, about = "Unit-consistent inverse kinematics experiments")]
struct Cli {
    /// TOML file presetting any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print J_G and every generalized inverse at one configuration for each unit.
    Sanity {
        #[command(flatten)]
        settings: Settings,
        /// Joint values: degrees for revolute, model length unit for prismatic.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        q: Option<Vec<f64>>,
    },
    /// Solve one motion for each unit and alpha; write trajectory CSVs and SVG plots.
    Motion {
        #[command(flatten)]
        settings: Settings,
        /// Motion index within the seeded sample (or within --motions).
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Motion list written by `benchmark`.
        #[arg(long)]
        motions: Option<PathBuf>,
        /// Start joints: degrees for revolute, model length unit for prismatic.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "target")]
        q0: Option<Vec<f64>>,
        /// Target joints, same units as --q0; the target pose is their forward kinematics.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "q0")]
        target: Option<Vec<f64>>,
    },
    /// Random-motion benchmark: %Sol, mean iterations and errors per unit, and %IPs.
    Benchmark {
        #[command(flatten)]
        settings: Settings,
        /// Re-run a saved motion list instead of sampling.
        #[arg(long)]
        motions: Option<PathBuf>,
    },
    /// Print a model in the `.dh` file format.
    Model {
        robot: String,
    },
}

/// Config errors exit with 2, runtime failures with 1.
enum Failure {
    Config(anyhow::Error),
    Run(anyhow::Error),
}

fn config<T, E: Into<anyhow::Error>>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Config(e.into()))
}

fn run<T, E: Into<anyhow::Error>>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Run(e.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn merged(flags: Settings, file: &Option<PathBuf>) -> Result<Settings, Failure> {
    match file {
        Some(path) => Ok(flags.over(config(Settings::from_file(path))?)),
        None => Ok(flags),
    }
}

fn robot(s: &Settings, default: &str) -> Result<RobotModel, Failure> {
    config(resolve_robot(s.robot.as_deref().unwrap_or(default)))
}

fn load_motion_list(path: &Path, model: &RobotModel) -> Result<Vec<MotionSpec>, Failure> {
    let text = config(std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
    let list = config(parse_motions(&text))?;
    if list.unit != model.unit() || list.motions.iter().any(|m| m.q0.len() != model.dof()) {
        return Err(Failure::Config(anyhow::anyhow!(
            "{} does not match robot {} in {}",
            path.display(),
            model.name(),
            model.unit().symbol()
        )));
    }
    Ok(list.motions)
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Model { robot } => {
            let m = config(resolve_robot(&robot))?;
            print!("{}", model_file::write_model(&m));
            Ok(())
        }
        Command::Sanity { settings, q } => {
            let s = merged(settings, &cli.config)?;
            let model = robot(&s, "planar3")?;
            let q = q.unwrap_or_else(|| vec![30.0, 30.0, -700.0]);
            let q = config(model.joints_from_mixed(&q))?;
            let methods = config(s.methods(&InverseMethod::ALL))?;
            let units = config(s.length_units())?;
            let report = run(sanity::sanity_table(&model, &q, &units, &methods, &BaselineParams::default()))?;
            let text = sanity::render(&report);
            print!("{text}");
            if let Some(dir) = &s.out {
                run(std::fs::create_dir_all(dir))?;
                run(std::fs::write(dir.join("sanity.txt"), &text))?;
                run(std::fs::write(dir.join("sanity.json"), run(serde_json::to_string_pretty(&report))?))?;
            }
            Ok(())
        }
        Command::Motion { settings, index, motions, q0, target } => {
            let s = merged(settings, &cli.config)?;
            let model = robot(&s, "planar3")?;
            let spec = match (q0, target, motions) {
                (Some(q0), Some(qt), _) => {
                    let q0 = config(model.joints_from_mixed(&q0))?;
                    let q_target = config(model.joints_from_mixed(&qt))?;
                    let target: Pose = config(forward_kinematics(&model, &q_target))?;
                    MotionSpec { index: 0, seed: 0, q0, q_target, target }
                }
                (_, _, Some(path)) => {
                    let list = load_motion_list(&path, &model)?;
                    config(
                        list.into_iter()
                            .find(|m| m.index == index)
                            .ok_or_else(|| anyhow::anyhow!("no motion {index} in {}", path.display())),
                    )?
                }
                _ => motion(&model, s.seed.unwrap_or(1), index),
            };
            let cfg = SweepConfig {
                method: config(s.methods(&[InverseMethod::Mx]))?[0],
                jacobian: config(s.jacobians(&[JacobianType::Geometric]))?[0],
                alphas: config(s.alphas())?,
                units: config(s.length_units())?,
                max_iterations: s.max_iter.unwrap_or(500).max(1),
                tol_pos_mm: config(Settings::positive(s.tol_pos_mm, 1.0, "tol-pos-mm"))?,
                tol_ori_deg: config(Settings::positive(s.tol_ori_deg, 1.0, "tol-ori-deg"))?,
            };
            let summary = run_sweep(&model, &spec, &cfg);
            for r in &summary.runs {
                println!(
                    "{:<3} alpha {:<5} {:<10} {:>4} it  eP {:>10} mm  eO {:>8} deg",
                    r.unit,
                    r.alpha,
                    r.status,
                    r.iterations,
                    r.position_error_mm.map_or("-".into(), |v| format!("{v:.4}")),
                    r.orientation_error_deg.map_or("-".into(), |v| format!("{v:.4}")),
                );
            }
            for (alpha, dev) in &summary.max_deviation_m {
                match dev {
                    Some(d) => println!("alpha {alpha}: max path deviation across units {d:.3e} m"),
                    None => println!("alpha {alpha}: paths differ in length across units"),
                }
            }
            let dir = s.out.clone().unwrap_or_else(|| PathBuf::from("out/motion"));
            run(write_sweep(&summary, is_planar(&model), &dir))?;
            println!("wrote {}", dir.display());
            Ok(())
        }
        Command::Benchmark { settings, motions } => {
            let s = merged(settings, &cli.config)?;
            let model = robot(&s, "planar3")?;
            let defaults = BenchmarkConfig::default();
            let alphas = config(s.alphas())?;
            if alphas.len() != 1 {
                return Err(Failure::Config(anyhow::anyhow!("benchmark takes a single alpha")));
            }
            let cfg = BenchmarkConfig {
                count: s.count.unwrap_or(defaults.count),
                seed: s.seed.unwrap_or(defaults.seed),
                methods: config(s.methods(&defaults.methods))?,
                jacobians: config(s.jacobians(&defaults.jacobians))?,
                units: config(s.length_units())?,
                alpha: alphas[0],
                max_iterations: s.max_iter.unwrap_or(defaults.max_iterations),
                tol_pos_mm: config(Settings::positive(s.tol_pos_mm, defaults.tol_pos_mm, "tol-pos-mm"))?,
                tol_ori_deg: config(Settings::positive(s.tol_ori_deg, defaults.tol_ori_deg, "tol-ori-deg"))?,
                path_tolerance_m: defaults.path_tolerance_m,
            };
            if cfg.max_iterations == 0 {
                return Err(Failure::Config(anyhow::anyhow!("max-iter must be at least 1")));
            }
            let list = match &motions {
                Some(path) => load_motion_list(path, &model)?,
                None => config(random_motions(&model, cfg.count, cfg.seed))?,
            };
            let report = run_motions(&model, &list, &cfg);
            print!("{}", render_table(&report));
            if let Some(dir) = &s.out {
                run(std::fs::create_dir_all(dir))?;
                run(write_csv(&report, run(std::fs::File::create(dir.join("report.csv")))?))?;
                run(std::fs::write(dir.join("report.json"), run(serde_json::to_string_pretty(&report))?))?;
                let saved = MotionList {
                    robot: model.name().into(),
                    unit: model.unit(),
                    motions: list,
                };
                run(std::fs::write(dir.join("motions.txt"), write_motions(&saved)))?;
                println!("\nwrote {}", dir.display());
            }
            Ok(())
        }
    }
}
