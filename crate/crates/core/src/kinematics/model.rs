use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DVector;

use super::KinematicsError;
use crate::math::deg_to_rad;

/// Joint values: radians for revolute joints, model length units for prismatic ones.
pub type JointVector = DVector<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum JointKind {
    Revolute,
    Prismatic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LengthUnit {
    M,
    Dm,
    Cm,
    Mm,
}

impl LengthUnit {
    pub const ALL: [LengthUnit; 4] = [LengthUnit::M, LengthUnit::Dm, LengthUnit::Cm, LengthUnit::Mm];

    /// Number of millimetres in one unit.
    pub fn millimetres(self) -> f64 {
        match self {
            LengthUnit::M => 1000.0,
            LengthUnit::Dm => 100.0,
            LengthUnit::Cm => 10.0,
            LengthUnit::Mm => 1.0,
        }
    }

    /// Factor that converts a length expressed in `self` into `target`.
    pub fn factor_to(self, target: LengthUnit) -> f64 {
        if self == target {
            1.0
        } else {
            self.millimetres() / target.millimetres()
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LengthUnit::M => "m",
            LengthUnit::Dm => "dm",
            LengthUnit::Cm => "cm",
            LengthUnit::Mm => "mm",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|u| u.symbol() == s)
    }
}

/// One row of the task-space pose vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TaskComponent {
    X,
    Y,
    Z,
    Ro,
    Pi,
    Ya,
}

impl TaskComponent {
    pub const ALL: [TaskComponent; 6] = [
        TaskComponent::X,
        TaskComponent::Y,
        TaskComponent::Z,
        TaskComponent::Ro,
        TaskComponent::Pi,
        TaskComponent::Ya,
    ];

    /// Position in the full `(X, Y, Z, Ro, Pi, Ya)` pose vector.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_position(self) -> bool {
        self.index() < 3
    }

    pub fn label(self) -> &'static str {
        match self {
            TaskComponent::X => "X",
            TaskComponent::Y => "Y",
            TaskComponent::Z => "Z",
            TaskComponent::Ro => "Ro",
            TaskComponent::Pi => "Pi",
            TaskComponent::Ya => "Ya",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }
}

/// Sampling interval of a joint variable (radians or model length units).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JointRange {
    pub min: f64,
    pub max: f64,
}

impl JointRange {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn full_turn() -> Self {
        Self::new(deg_to_rad(-180.0), deg_to_rad(180.0))
    }
}

/// A single D-H row. For a revolute joint the joint value is added to
/// `theta`; for a prismatic joint it is added to `d`. Angles are radians.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DhRow {
    pub kind: JointKind,
    pub theta: f64,
    pub d: f64,
    pub a: f64,
    pub alpha: f64,
    pub range: JointRange,
}

impl DhRow {
    /// Revolute row from degrees, with the default full-turn range.
    pub fn revolute_deg(theta_deg: f64, d: f64, a: f64, alpha_deg: f64) -> Self {
        Self {
            kind: JointKind::Revolute,
            theta: deg_to_rad(theta_deg),
            d,
            a,
            alpha: deg_to_rad(alpha_deg),
            range: JointRange::full_turn(),
        }
    }

    /// Prismatic row from degrees; `range` is in model length units.
    pub fn prismatic_deg(theta_deg: f64, d: f64, a: f64, alpha_deg: f64, range: JointRange) -> Self {
        Self {
            kind: JointKind::Prismatic,
            theta: deg_to_rad(theta_deg),
            d,
            a,
            alpha: deg_to_rad(alpha_deg),
            range,
        }
    }

    /// `(theta, d)` with the joint value applied.
    pub(crate) fn joint_params(&self, q: f64) -> (f64, f64) {
        match self.kind {
            JointKind::Revolute => (self.theta + q, self.d),
            JointKind::Prismatic => (self.theta, self.d + q),
        }
    }
}

/// An immutable serial chain.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RobotModel {
    name: String,
    rows: Vec<DhRow>,
    unit: LengthUnit,
    task: Vec<TaskComponent>,
}

impl RobotModel {
    pub fn new(
        name: impl Into<String>,
        rows: Vec<DhRow>,
        unit: LengthUnit,
        task: Vec<TaskComponent>,
    ) -> Result<Self, KinematicsError> {
        if rows.is_empty() {
            return Err(KinematicsError::EmptyChain);
        }
        if task.is_empty() {
            return Err(KinematicsError::EmptyTask);
        }
        for (i, t) in task.iter().enumerate() {
            if task[..i].contains(t) {
                return Err(KinematicsError::DuplicateTask(*t));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            let vals = [row.theta, row.d, row.a, row.alpha, row.range.min, row.range.max];
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(KinematicsError::NonFiniteParameter { joint: i });
            }
            if row.range.min > row.range.max {
                return Err(KinematicsError::BadRange { joint: i });
            }
        }
        Ok(Self {
            name: name.into(),
            rows,
            unit,
            task,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rows(&self) -> &[DhRow] {
        &self.rows
    }

    pub fn dof(&self) -> usize {
        self.rows.len()
    }

    pub fn unit(&self) -> LengthUnit {
        self.unit
    }

    pub fn task(&self) -> &[TaskComponent] {
        &self.task
    }

    pub fn joint_kinds(&self) -> impl Iterator<Item = JointKind> + '_ {
        self.rows.iter().map(|r| r.kind)
    }

    pub fn has_orientation_task(&self) -> bool {
        self.task.iter().any(|t| !t.is_position())
    }

    pub fn check_joints(&self, q: &JointVector) -> Result<(), KinematicsError> {
        if q.len() != self.rows.len() {
            return Err(KinematicsError::JointCount {
                expected: self.rows.len(),
                found: q.len(),
            });
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Err(KinematicsError::NonFiniteJoint);
        }
        Ok(())
    }

    /// Builds a joint vector from degrees (revolute) and model units (prismatic).
    pub fn joints_from_mixed(&self, values: &[f64]) -> Result<JointVector, KinematicsError> {
        if values.len() != self.rows.len() {
            return Err(KinematicsError::JointCount {
                expected: self.rows.len(),
                found: values.len(),
            });
        }
        Ok(DVector::from_iterator(
            values.len(),
            self.rows.iter().zip(values).map(|(row, &v)| match row.kind {
                JointKind::Revolute => deg_to_rad(v),
                JointKind::Prismatic => v,
            }),
        ))
    }
}

/// Re-expresses a model and joint vector in another length unit. Lengths
/// (`d`, `a`, prismatic values and ranges) are multiplied by the conversion
/// factor; angles are left untouched.
pub fn rescale_units(
    model: &RobotModel,
    q: &JointVector,
    target: LengthUnit,
) -> Result<(RobotModel, JointVector), KinematicsError> {
    model.check_joints(q)?;
    let k = model.unit.factor_to(target);
    if k == 1.0 {
        let mut out = model.clone();
        out.unit = target;
        return Ok((out, q.clone()));
    }
    let rows = model
        .rows
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.d *= k;
            r.a *= k;
            if r.kind == JointKind::Prismatic {
                r.range = JointRange::new(r.range.min * k, r.range.max * k);
            }
            r
        })
        .collect();
    let q = DVector::from_iterator(
        q.len(),
        model.rows.iter().zip(q.iter()).map(|(row, &v)| match row.kind {
            JointKind::Revolute => v,
            JointKind::Prismatic => v * k,
        }),
    );
    let out = RobotModel {
        name: model.name.clone(),
        rows,
        unit: target,
        task: model.task.clone(),
    };
    Ok((out, q))
}
