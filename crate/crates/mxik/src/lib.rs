//! Experiment harness around [`mxik_core`]: model and motion files, the
//! unit-sweep sanity table, trajectory sweeps with SVG plots, and the
//! random-motion benchmark with CSV/JSON reports.

pub mod benchmark;
pub mod model_file;
pub mod motion_file;
pub mod sanity;
pub mod settings;
pub mod svg;
pub mod sweep;

pub use mxik_core as core;

use std::path::Path;

use mxik_core::catalog::{load_robot, ROBOT_NAMES};
use mxik_core::RobotModel;

/// A catalog name, or else a path to a `.dh` file.
pub fn resolve_robot(spec: &str) -> anyhow::Result<RobotModel> {
    if ROBOT_NAMES.contains(&spec) {
        return Ok(load_robot(spec)?);
    }
    let path = Path::new(spec);
    if path.exists() {
        return Ok(model_file::read_model(path)?);
    }
    anyhow::bail!("unknown robot {spec:?} (catalog: {})", ROBOT_NAMES.join(", "))
}
