//! Line-oriented motion lists for re-running a benchmark sample.
//!
//! ```text
//! mxik-motions 1
//! robot planar3
//! unit mm
//! dof 3
//! motion 0 seed 7 q0 0.1 -0.2 -350 qt 0.3 0.4 -120 pose 812.5 1403.1 0 0 0 1.2
//! ```
//!
//! Joint values are radians or model length units, pose positions are in the
//! model unit and angles in radians. Values use the shortest decimal form that
//! reads back to the same `f64`.

use std::fmt::Write as _;

use mxik_core::catalog::MotionSpec;
use mxik_core::kinematics::{LengthUnit, Pose};
use mxik_core::JointVector;

pub const MAGIC: &str = "mxik-motions";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct MotionList {
    pub robot: String,
    pub unit: LengthUnit,
    pub motions: Vec<MotionSpec>,
}

#[derive(Debug, thiserror::Error)]
pub enum MotionFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("unsupported motion file version {0}")]
    Version(u32),
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" ")
}

pub fn write_motions(list: &MotionList) -> String {
    let dof = list.motions.first().map_or(0, |m| m.q0.len());
    let mut out = String::new();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(out, "robot {}", list.robot).unwrap();
    writeln!(out, "unit {}", list.unit.symbol()).unwrap();
    writeln!(out, "dof {dof}").unwrap();
    for m in &list.motions {
        writeln!(
            out,
            "motion {} seed {} q0 {} qt {} pose {}",
            m.index,
            m.seed,
            join(m.q0.iter().copied()),
            join(m.q_target.iter().copied()),
            join(m.target.as_array())
        )
        .unwrap();
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> MotionFileError {
    MotionFileError::Syntax { line, msg: msg.into() }
}

fn take_floats<'a>(
    toks: &mut impl Iterator<Item = &'a str>,
    n: usize,
    line: usize,
) -> Result<Vec<f64>, MotionFileError> {
    (0..n)
        .map(|_| {
            let t = toks.next().ok_or_else(|| err(line, "too few values"))?;
            t.parse().map_err(|_| err(line, format!("bad number {t:?}")))
        })
        .collect()
}

fn expect<'a>(toks: &mut impl Iterator<Item = &'a str>, key: &str, line: usize) -> Result<(), MotionFileError> {
    match toks.next() {
        Some(k) if k == key => Ok(()),
        other => Err(err(line, format!("expected {key:?}, found {other:?}"))),
    }
}

fn parse_motion(line: &str, n: usize, dof: usize) -> Result<MotionSpec, MotionFileError> {
    let mut toks = line.split_whitespace();
    expect(&mut toks, "motion", n)?;
    let index = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(n, "bad motion index"))?;
    expect(&mut toks, "seed", n)?;
    let seed = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(n, "bad seed"))?;
    expect(&mut toks, "q0", n)?;
    let q0 = JointVector::from_vec(take_floats(&mut toks, dof, n)?);
    expect(&mut toks, "qt", n)?;
    let q_target = JointVector::from_vec(take_floats(&mut toks, dof, n)?);
    expect(&mut toks, "pose", n)?;
    let p = take_floats(&mut toks, 6, n)?;
    if toks.next().is_some() {
        return Err(err(n, "trailing values"));
    }
    Ok(MotionSpec {
        index,
        seed,
        q0,
        q_target,
        target: Pose::new([p[0], p[1], p[2]], [p[3], p[4], p[5]]),
    })
}

pub fn parse_motions(text: &str) -> Result<MotionList, MotionFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, first) = lines.next().ok_or(MotionFileError::MissingHeader(MAGIC))?;
    let mut it = first.split_whitespace();
    if it.next() != Some(MAGIC) {
        return Err(MotionFileError::MissingHeader(MAGIC));
    }
    let version: u32 = it.next().and_then(|v| v.parse().ok()).ok_or_else(|| err(n, "missing version"))?;
    if version != VERSION {
        return Err(MotionFileError::Version(version));
    }

    let mut robot = None;
    let mut unit = None;
    let mut dof = None;
    let mut motions = Vec::new();
    for (n, line) in lines {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "robot" => robot = Some(rest.to_string()),
            "unit" => {
                unit = Some(LengthUnit::from_symbol(rest).ok_or_else(|| err(n, format!("unknown unit {rest:?}")))?)
            }
            "dof" => dof = Some(rest.parse::<usize>().map_err(|_| err(n, "bad dof"))?),
            "motion" => {
                let dof = dof.ok_or(MotionFileError::MissingHeader("dof"))?;
                motions.push(parse_motion(line, n, dof)?);
            }
            other => return Err(err(n, format!("unexpected {other:?}"))),
        }
    }
    Ok(MotionList {
        robot: robot.ok_or(MotionFileError::MissingHeader("robot"))?,
        unit: unit.ok_or(MotionFileError::MissingHeader("unit"))?,
        motions,
    })
}
