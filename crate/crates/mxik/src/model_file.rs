//! Plain-text robot description (`.dh`).
//!
//! ```text
//! mxik-model 1
//! name planar3
//! unit mm
//! task X Y
//! # kind theta_deg d a alpha_deg min max
//! R 0 0 1000 0 -180 180
//! R 0 0 1100 90 -180 180
//! P 0 0 0 0 -1000 0
//! ```
//!
//! Angles are written in degrees, lengths in the declared unit. Revolute
//! ranges are in degrees, prismatic ranges in the length unit. Blank lines
//! and `#` comments are ignored. An angle that has no exact decimal degree
//! form is written in radians with an `r` suffix (`1.2345r`), so every model
//! survives a write/read cycle bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use mxik_core::kinematics::{DhRow, JointKind, JointRange, LengthUnit, RobotModel, TaskComponent};
use mxik_core::math::{deg_to_rad, rad_to_deg};

pub const MAGIC: &str = "mxik-model";
pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("unsupported model file version {0}")]
    Version(u32),
    #[error(transparent)]
    Model(#[from] mxik_core::kinematics::KinematicsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> ModelFileError {
    ModelFileError::Syntax { line, msg: msg.into() }
}

/// Shortest degree literal that maps back to exactly `rad`.
fn format_angle(rad: f64) -> String {
    let deg = rad_to_deg(rad);
    for precision in 0..=17 {
        let s = format!("{deg:.precision$}");
        if s.parse::<f64>().map(deg_to_rad) == Ok(rad) {
            return trim_decimal(s);
        }
    }
    format!("{rad}r")
}

fn trim_decimal(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s.remove(0);
    }
    s
}

fn parse_angle(tok: &str, line: usize) -> Result<f64, ModelFileError> {
    if let Some(r) = tok.strip_suffix('r') {
        r.parse().map_err(|_| syntax(line, format!("bad angle {tok:?}")))
    } else {
        tok.parse::<f64>()
            .map(deg_to_rad)
            .map_err(|_| syntax(line, format!("bad angle {tok:?}")))
    }
}

fn parse_length(tok: &str, line: usize) -> Result<f64, ModelFileError> {
    tok.parse().map_err(|_| syntax(line, format!("bad length {tok:?}")))
}

pub fn write_model(model: &RobotModel) -> String {
    let mut out = String::new();
    let task: Vec<_> = model.task().iter().map(|c| c.label()).collect();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(out, "name {}", model.name()).unwrap();
    writeln!(out, "unit {}", model.unit().symbol()).unwrap();
    writeln!(out, "task {}", task.join(" ")).unwrap();
    writeln!(out, "# kind theta_deg d a alpha_deg min max").unwrap();
    for row in model.rows() {
        let (kind, min, max) = match row.kind {
            JointKind::Revolute => ("R", format_angle(row.range.min), format_angle(row.range.max)),
            JointKind::Prismatic => ("P", format!("{}", row.range.min), format!("{}", row.range.max)),
        };
        writeln!(
            out,
            "{kind} {} {} {} {} {min} {max}",
            format_angle(row.theta),
            row.d,
            row.a,
            format_angle(row.alpha)
        )
        .unwrap();
    }
    out
}

pub fn parse_model(text: &str) -> Result<RobotModel, ModelFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (n, magic) = lines.next().ok_or(ModelFileError::MissingHeader(MAGIC))?;
    let mut it = magic.split_whitespace();
    if it.next() != Some(MAGIC) {
        return Err(ModelFileError::MissingHeader(MAGIC));
    }
    let version: u32 = it
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| syntax(n, "missing version"))?;
    if version != VERSION {
        return Err(ModelFileError::Version(version));
    }

    let mut name = None;
    let mut unit = None;
    let mut task = None;
    let mut rows = Vec::new();
    for (n, line) in lines {
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        match head {
            "name" => name = Some(rest.join(" ")),
            "unit" => {
                let sym = rest.first().copied().unwrap_or_default();
                unit = Some(
                    LengthUnit::from_symbol(sym).ok_or_else(|| syntax(n, format!("unknown unit {sym:?}")))?,
                );
            }
            "task" => {
                let comps = rest
                    .iter()
                    .map(|s| {
                        TaskComponent::from_label(s)
                            .ok_or_else(|| syntax(n, format!("unknown task component {s:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                task = Some(comps);
            }
            "R" | "P" => {
                if rest.len() != 6 {
                    return Err(syntax(n, format!("expected 6 values after {head}, found {}", rest.len())));
                }
                let theta = parse_angle(rest[0], n)?;
                let d = parse_length(rest[1], n)?;
                let a = parse_length(rest[2], n)?;
                let alpha = parse_angle(rest[3], n)?;
                let (kind, range) = if head == "R" {
                    (JointKind::Revolute, JointRange::new(parse_angle(rest[4], n)?, parse_angle(rest[5], n)?))
                } else {
                    (
                        JointKind::Prismatic,
                        JointRange::new(parse_length(rest[4], n)?, parse_length(rest[5], n)?),
                    )
                };
                rows.push(DhRow { kind, theta, d, a, alpha, range });
            }
            other => return Err(syntax(n, format!("unexpected {other:?}"))),
        }
    }
    let name = name.ok_or(ModelFileError::MissingHeader("name"))?;
    let unit = unit.ok_or(ModelFileError::MissingHeader("unit"))?;
    let task = task.ok_or(ModelFileError::MissingHeader("task"))?;
    Ok(RobotModel::new(&name, rows, unit, task)?)
}

pub fn read_model(path: &Path) -> Result<RobotModel, ModelFileError> {
    parse_model(&std::fs::read_to_string(path)?)
}
