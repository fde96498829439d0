use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::fk::{fk_unchecked, frames_unchecked, origin, z_axis};
use super::{
    JointKind, JointVector, KinematicsError, LengthUnit, Pose, RobotModel, TaskComponent,
};
use crate::linalg::Matrix;
use crate::math::{wrap_angle, FRAC_PI_2};

/// Forward-difference step used when none is given.
pub const DEFAULT_NUMERICAL_STEP: f64 = 0.01;
/// Analytical Jacobians are refused when `|pitch|` is this close to `pi/2`.
pub const GIMBAL_MARGIN: f64 = 1e-6;
const RICHARDSON_STEP: f64 = 1e-4;

/// A task-space Jacobian with its row and column semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianMatrix {
    pub matrix: Matrix,
    pub rows: Vec<TaskComponent>,
    pub cols: Vec<JointKind>,
}

impl JacobianMatrix {
    fn from_full(full: &Matrix, model: &RobotModel) -> Self {
        let task = model.task();
        let matrix = DMatrix::from_fn(task.len(), full.ncols(), |r, c| full[(task[r].index(), c)]);
        Self {
            matrix,
            rows: task.to_vec(),
            cols: model.joint_kinds().collect(),
        }
    }
}

/// `J_P = z_{i-1} x (p - p_{i-1})`, `J_O = z_{i-1}` for revolute joints and
/// `J_P = z_{i-1}`, `J_O = 0` for prismatic ones; restricted to the model's
/// task rows.
pub fn geometric_jacobian(
    model: &RobotModel,
    q: &JointVector,
) -> Result<JacobianMatrix, KinematicsError> {
    model.check_joints(q)?;
    let frames = frames_unchecked(model, q);
    let p = origin(&frames[model.dof()]);
    let mut full = DMatrix::zeros(6, model.dof());
    for (i, row) in model.rows().iter().enumerate() {
        let z = z_axis(&frames[i]);
        match row.kind {
            JointKind::Revolute => {
                let jp = z.cross(&(p - origin(&frames[i])));
                full.view_mut((0, i), (3, 1)).copy_from(&jp);
                full.view_mut((3, i), (3, 1)).copy_from(&z);
            }
            JointKind::Prismatic => {
                full.view_mut((0, i), (3, 1)).copy_from(&z);
            }
        }
    }
    Ok(JacobianMatrix::from_full(&full, model))
}

fn perturbed(model: &RobotModel, q: &JointVector, joint: usize, delta: f64) -> Pose {
    let mut qp = q.clone();
    qp[joint] += delta;
    fk_unchecked(model, &qp)
}

fn pose_delta(a: &Pose, b: &Pose) -> [f64; 6] {
    let (a, b) = (a.as_array(), b.as_array());
    let mut out = [0.0; 6];
    for k in 0..6 {
        out[k] = if k < 3 { a[k] - b[k] } else { wrap_angle(a[k] - b[k]) };
    }
    out
}

/// Forward differences of the pose map: column `c` is
/// `(FK(q + h_c * e_c) - FK(q)) / h_c`, with angular differences wrapped to
/// the branch nearest the unperturbed pose. `h_c` is `step` radians for a
/// revolute joint and `step` metres, expressed in the model unit, for a
/// prismatic one, so the same physical perturbation is used in every unit.
pub fn numerical_jacobian(
    model: &RobotModel,
    q: &JointVector,
    step: f64,
) -> Result<JacobianMatrix, KinematicsError> {
    model.check_joints(q)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(KinematicsError::InvalidStep(step));
    }
    let base = fk_unchecked(model, q);
    let metre = LengthUnit::M.factor_to(model.unit());
    let mut full = DMatrix::zeros(6, model.dof());
    for (c, row) in model.rows().iter().enumerate() {
        let h = match row.kind {
            JointKind::Revolute => step,
            JointKind::Prismatic => step * metre,
        };
        let d = pose_delta(&perturbed(model, q, c, h), &base);
        full.set_column(c, &DVector::from_iterator(6, d.iter().map(|v| v / h)));
    }
    Ok(JacobianMatrix::from_full(&full, model))
}

/// Partial derivatives of the pose vector `(X, Y, Z, Ro, Pi, Ya)` with
/// respect to the joints, from Richardson-extrapolated central differences.
/// Orientation rows are roll/pitch/yaw rates, not angular velocity.
pub fn analytical_jacobian(
    model: &RobotModel,
    q: &JointVector,
) -> Result<JacobianMatrix, KinematicsError> {
    model.check_joints(q)?;
    let base = fk_unchecked(model, q);
    let pitch = base.orientation[1];
    if pitch.abs() > FRAC_PI_2 - GIMBAL_MARGIN {
        return Err(KinematicsError::GimbalLock { pitch });
    }
    let h = RICHARDSON_STEP;
    let central = |c: usize, h: f64| -> [f64; 6] {
        let mut d = pose_delta(&perturbed(model, q, c, h), &perturbed(model, q, c, -h));
        d.iter_mut().for_each(|v| *v /= 2.0 * h);
        d
    };
    let mut full = DMatrix::zeros(6, model.dof());
    for c in 0..model.dof() {
        let coarse = central(c, h);
        let fine = central(c, h / 2.0);
        for k in 0..6 {
            full[(k, c)] = (4.0 * fine[k] - coarse[k]) / 3.0;
        }
    }
    Ok(JacobianMatrix::from_full(&full, model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{DhRow, JointRange, LengthUnit};
    use alloc::vec;

    fn slider() -> RobotModel {
        RobotModel::new(
            "slider",
            vec![DhRow::prismatic_deg(0.0, 0.0, 0.0, 0.0, JointRange::new(0.0, 1.0))],
            LengthUnit::M,
            TaskComponent::ALL.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn linear_map_is_exact_for_any_step() {
        let m = slider();
        let q = DVector::from_vec(vec![0.3]);
        for step in [1e-6, 0.01, 0.5, 3.0] {
            let j = numerical_jacobian(&m, &q, step).unwrap();
            let want = [0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
            for (got, want) in j.matrix.column(0).iter().zip(want) {
                assert!((got - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_step() {
        let m = slider();
        let q = DVector::from_vec(vec![0.3]);
        assert_eq!(
            numerical_jacobian(&m, &q, 0.0).unwrap_err(),
            KinematicsError::InvalidStep(0.0)
        );
    }

    #[test]
    fn prismatic_chain_has_zero_orientation_rows() {
        let m = RobotModel::new(
            "pp",
            vec![
                DhRow::prismatic_deg(0.0, 0.0, 0.0, 90.0, JointRange::new(0.0, 1.0)),
                DhRow::prismatic_deg(90.0, 0.0, 0.0, 90.0, JointRange::new(0.0, 1.0)),
            ],
            LengthUnit::M,
            TaskComponent::ALL.to_vec(),
        )
        .unwrap();
        let j = geometric_jacobian(&m, &DVector::from_vec(vec![0.2, 0.7])).unwrap();
        for r in 3..6 {
            for c in 0..2 {
                assert_eq!(j.matrix[(r, c)], 0.0);
            }
        }
    }

    #[test]
    fn gimbal_lock_is_reported() {
        // Rx(-90) * Rz(q2) pitches the tool to pi/2 at q2 = pi/2
        let m = RobotModel::new(
            "pitcher",
            vec![DhRow::revolute_deg(0.0, 0.0, 0.0, -90.0), DhRow::revolute_deg(0.0, 0.0, 1.0, 0.0)],
            LengthUnit::M,
            TaskComponent::ALL.to_vec(),
        )
        .unwrap();
        let q = DVector::from_vec(vec![0.0, FRAC_PI_2]);
        assert!(matches!(
            analytical_jacobian(&m, &q),
            Err(KinematicsError::GimbalLock { .. })
        ));
        let q = DVector::from_vec(vec![0.0, 0.4]);
        assert!(analytical_jacobian(&m, &q).is_ok());
    }
}
