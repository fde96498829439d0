//! Flags shared by the subcommands, and the TOML file that can preset them.
//!
//! Every flag has a config key of the same name (`max-iter = 200`,
//! `method = ["MP", "MX"]`). Flags given on the command line win.

use std::path::{Path, PathBuf};

use clap::Args;
use mxik_core::kinematics::LengthUnit;
use mxik_core::{InverseMethod, JacobianType};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Catalog name or path to a `.dh` model file.
    #[arg(long)]
    pub robot: Option<String>,
    /// Inverse methods, comma separated (MP, UC, MX, ED, JF, JD, SD, IED, SVF).
    #[arg(long, value_delimiter = ',')]
    pub method: Option<Vec<String>>,
    /// Jacobian types, comma separated (analytical, geometric, numerical or A, G, N).
    #[arg(long, value_delimiter = ',')]
    pub jacobian: Option<Vec<String>>,
    /// Length units, comma separated (m, dm, cm, mm).
    #[arg(long, value_delimiter = ',')]
    pub units: Option<Vec<String>>,
    /// Attenuation values, comma separated, each in (0, 1].
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub tol_pos_mm: Option<f64>,
    #[arg(long)]
    pub tol_ori_deg: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum SettingsError {
    #[error("cannot read config {path}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("unknown {kind} {value:?}")]
    Unknown { kind: &'static str, value: String },
    #[error("{0}")]
    Invalid(String),
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, SettingsError> {
        let text = std::fs::read_to_string(path).map_err(|source| SettingsError::Read {
            path: path.to_owned(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| SettingsError::Parse {
            path: path.to_owned(),
            source,
        })
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            robot: self.robot.or(base.robot),
            method: self.method.or(base.method),
            jacobian: self.jacobian.or(base.jacobian),
            units: self.units.or(base.units),
            alpha: self.alpha.or(base.alpha),
            count: self.count.or(base.count),
            seed: self.seed.or(base.seed),
            max_iter: self.max_iter.or(base.max_iter),
            tol_pos_mm: self.tol_pos_mm.or(base.tol_pos_mm),
            tol_ori_deg: self.tol_ori_deg.or(base.tol_ori_deg),
            out: self.out.or(base.out),
        }
    }

    pub fn methods(&self, default: &[InverseMethod]) -> Result<Vec<InverseMethod>, SettingsError> {
        parse_list(&self.method, default, "inverse method", InverseMethod::parse)
    }

    pub fn jacobians(&self, default: &[JacobianType]) -> Result<Vec<JacobianType>, SettingsError> {
        parse_list(&self.jacobian, default, "jacobian type", JacobianType::parse)
    }

    pub fn length_units(&self) -> Result<Vec<LengthUnit>, SettingsError> {
        parse_list(&self.units, &LengthUnit::ALL, "unit", LengthUnit::from_symbol)
    }

    pub fn alphas(&self) -> Result<Vec<f64>, SettingsError> {
        let v = self.alpha.clone().unwrap_or_else(|| vec![1.0]);
        if v.is_empty() || v.iter().any(|a| !(*a > 0.0 && *a <= 1.0)) {
            return Err(SettingsError::Invalid("alpha values must lie in (0, 1]".into()));
        }
        Ok(v)
    }

    pub fn positive(value: Option<f64>, default: f64, name: &str) -> Result<f64, SettingsError> {
        let v = value.unwrap_or(default);
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(SettingsError::Invalid(format!("{name} must be positive, got {v}")))
        }
    }
}

fn parse_list<T: Copy>(
    values: &Option<Vec<String>>,
    default: &[T],
    kind: &'static str,
    parse: impl Fn(&str) -> Option<T>,
) -> Result<Vec<T>, SettingsError> {
    let Some(values) = values else {
        return Ok(default.to_vec());
    };
    if values.is_empty() {
        return Err(SettingsError::Invalid(format!("empty {kind} list")));
    }
    values
        .iter()
        .map(|v| parse(v).ok_or_else(|| SettingsError::Unknown { kind, value: v.clone() }))
        .collect()
}
