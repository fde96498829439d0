//! Jacobian and generalized inverses of one configuration under a unit sweep.

use std::fmt::Write as _;

use mxik_core::baseline::BaselineParams;
use mxik_core::kinematics::{forward_kinematics, geometric_jacobian, rescale_units, JointKind, LengthUnit, RobotModel};
use mxik_core::partition::dynamic_partition;
use mxik_core::{InverseMethod, JointVector, Matrix, Vector};
use serde::Serialize;

/// Relative tolerance of the unit-consistency check.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum InverseValue {
    /// Row-major generalized inverse.
    Matrix(Vec<Vec<f64>>),
    /// Joint update for the reference error (methods without a matrix form).
    Update(Vec<f64>),
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitBlock {
    pub unit: String,
    pub jacobian: Vec<Vec<f64>>,
    pub reference_error: Vec<f64>,
    pub inverses: Vec<(String, InverseValue)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SanityReport {
    pub robot: String,
    /// Joint values in radians and `unit`.
    pub joints: Vec<f64>,
    pub unit: String,
    pub blocks: Vec<UnitBlock>,
    pub consistent: Vec<(String, bool)>,
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Evaluates `J_G` and every inverse at `q` (in `base`'s unit) for each unit.
/// The ED, IED and SD methods use the reference error `FK(0) - FK(q)`.
pub fn sanity_table(
    base: &RobotModel,
    q: &JointVector,
    units: &[LengthUnit],
    methods: &[InverseMethod],
    params: &BaselineParams,
) -> anyhow::Result<SanityReport> {
    let mut blocks = Vec::new();
    let mut raw: Vec<Vec<InverseValue>> = Vec::new();
    for &u in units {
        let (model, qu) = rescale_units(base, q, u)?;
        let j = geometric_jacobian(&model, &qu)?.matrix;
        let home = forward_kinematics(&model, &JointVector::zeros(model.dof()))?;
        let here = forward_kinematics(&model, &qu)?;
        let e: Vector = home.difference(&here, model.task());
        let partition = dynamic_partition(&model, &qu)?.partition;
        let mut values = Vec::new();
        for &m in methods {
            let v = match m.inverse_matrix(&j, &e, params, Some(&partition))? {
                Some(inv) => InverseValue::Matrix(rows(&inv)),
                None => InverseValue::Update(m.joint_update(&j, &e, 1.0, params, None)?.iter().copied().collect()),
            };
            values.push(v);
        }
        blocks.push(UnitBlock {
            unit: u.symbol().into(),
            jacobian: rows(&j),
            reference_error: e.iter().copied().collect(),
            inverses: methods.iter().map(|m| m.label().to_string()).zip(values.iter().cloned()).collect(),
        });
        raw.push(values);
    }

    let kinds: Vec<JointKind> = base.joint_kinds().collect();
    let position_rows: Vec<bool> = base.task().iter().map(|c| c.is_position()).collect();
    let consistent = methods
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let ok = units.iter().enumerate().all(|(ui, &u)| {
                let s = units[0].factor_to(u);
                consistent_with(&raw[0][k], &raw[ui][k], s, &kinds, &position_rows)
            });
            (m.label().to_string(), ok)
        })
        .collect();
    Ok(SanityReport {
        robot: base.name().into(),
        joints: q.iter().copied().collect(),
        unit: base.unit().symbol().into(),
        blocks,
        consistent,
    })
}

/// A unit change by `s` maps `J` to `D J E` with `D = s` on position rows and
/// `E = 1/s` on prismatic columns; a unit-consistent inverse then maps to
/// `E^-1 X D^-1`, and a joint update to `E^-1 dq`.
fn consistent_with(reference: &InverseValue, value: &InverseValue, s: f64, kinds: &[JointKind], pos: &[bool]) -> bool {
    let col = |c: usize| if kinds[c] == JointKind::Prismatic { s } else { 1.0 };
    let row = |r: usize| if pos[r] { 1.0 / s } else { 1.0 };
    let close = |want: f64, got: f64, scale: f64| (want - got).abs() <= CONSISTENCY_TOLERANCE * scale.max(f64::MIN_POSITIVE);
    match (reference, value) {
        (InverseValue::Matrix(a), InverseValue::Matrix(b)) => {
            let want: Vec<Vec<f64>> = a
                .iter()
                .enumerate()
                .map(|(c, r)| r.iter().enumerate().map(|(k, v)| v * col(c) * row(k)).collect())
                .collect();
            let scale = want.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            want.iter().flatten().zip(b.iter().flatten()).all(|(w, g)| close(*w, *g, scale))
        }
        (InverseValue::Update(a), InverseValue::Update(b)) => {
            let want: Vec<f64> = a.iter().enumerate().map(|(c, v)| v * col(c)).collect();
            let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            want.iter().zip(b).all(|(w, g)| close(*w, *g, scale))
        }
        _ => false,
    }
}

fn write_matrix(out: &mut String, m: &[Vec<f64>]) {
    for r in m {
        let cells: Vec<String> = r.iter().map(|v| format!("{v:>14.8}")).collect();
        writeln!(out, "    {}", cells.join(" ")).unwrap();
    }
}

pub fn render(report: &SanityReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} at q = {:?} (radians, {})", report.robot, report.joints, report.unit).unwrap();
    for b in &report.blocks {
        writeln!(s, "\n== unit {} ==", b.unit).unwrap();
        writeln!(s, "  J_G").unwrap();
        write_matrix(&mut s, &b.jacobian);
        for (name, v) in &b.inverses {
            match v {
                InverseValue::Matrix(m) => {
                    writeln!(s, "  {name}").unwrap();
                    write_matrix(&mut s, m);
                }
                InverseValue::Update(dq) => {
                    writeln!(s, "  {name} (dq for the reference error)").unwrap();
                    write_matrix(&mut s, std::slice::from_ref(dq));
                }
            }
        }
    }
    writeln!(s, "\nunit-consistent across the sweep:").unwrap();
    for (name, ok) in &report.consistent {
        writeln!(s, "  {name:<4} {}", if *ok { "yes" } else { "no" }).unwrap();
    }
    s
}
