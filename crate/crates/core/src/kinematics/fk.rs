use alloc::vec::Vec;

use nalgebra::{DVector, Matrix3, Matrix4, Rotation3, UnitQuaternion, Vector3};

use super::{JointVector, KinematicsError, RobotModel, TaskComponent};
use crate::math::{atan2, cos, hypot, sin, wrap_angle};

pub type Transform = Matrix4<f64>;

/// End-effector pose: position in model units, roll/pitch/yaw in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pose {
    pub position: [f64; 3],
    pub orientation: [f64; 3],
}

impl Pose {
    pub fn new(position: [f64; 3], orientation: [f64; 3]) -> Self {
        Self { position, orientation }
    }

    pub fn component(&self, c: TaskComponent) -> f64 {
        let i = c.index();
        if i < 3 {
            self.position[i]
        } else {
            self.orientation[i - 3]
        }
    }

    pub fn as_array(&self) -> [f64; 6] {
        let [x, y, z] = self.position;
        let [r, p, w] = self.orientation;
        [x, y, z, r, p, w]
    }

    /// `self - other` on the given components, angles wrapped to `(-pi, pi]`.
    pub fn difference(&self, other: &Pose, task: &[TaskComponent]) -> DVector<f64> {
        DVector::from_iterator(
            task.len(),
            task.iter().map(|&c| {
                let d = self.component(c) - other.component(c);
                if c.is_position() {
                    d
                } else {
                    wrap_angle(d)
                }
            }),
        )
    }

    /// `Rz(yaw) * Ry(pitch) * Rx(roll)`.
    pub fn rotation(&self) -> Matrix3<f64> {
        let [r, p, y] = self.orientation;
        let (sr, cr) = (sin(r), cos(r));
        let (sp, cp) = (sin(p), cos(p));
        let (sy, cy) = (sin(y), cos(y));
        Matrix3::new(
            cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr, //
            sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr, //
            -sp, cp * sr, cp * cr,
        )
    }

    /// Rotation vector (axis times angle, base frame) taking `other` to `self`.
    pub fn rotation_error(&self, other: &Pose) -> Vector3<f64> {
        let r = Rotation3::from_matrix_unchecked(self.rotation() * other.rotation().transpose());
        UnitQuaternion::from_rotation_matrix(&r).scaled_axis()
    }

    /// Like [`Pose::difference`], but orientation rows carry the components of
    /// [`Pose::rotation_error`] (roll, pitch, yaw rows read x, y, z). This is
    /// the error that matches angular-velocity Jacobian rows.
    pub fn twist_difference(&self, other: &Pose, task: &[TaskComponent]) -> DVector<f64> {
        let w = if task.iter().any(|c| !c.is_position()) {
            self.rotation_error(other)
        } else {
            Vector3::zeros()
        };
        DVector::from_iterator(
            task.len(),
            task.iter().map(|&c| {
                let i = c.index();
                if c.is_position() {
                    self.position[i] - other.position[i]
                } else {
                    w[i - 3]
                }
            }),
        )
    }

    /// Position scaled by `k`, orientation unchanged.
    pub fn scale_position(&self, k: f64) -> Pose {
        let [x, y, z] = self.position;
        Pose::new([x * k, y * k, z * k], self.orientation)
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }
}

fn dh_transform(theta: f64, d: f64, a: f64, alpha: f64) -> Transform {
    let (st, ct) = (sin(theta), cos(theta));
    let (sa, ca) = (sin(alpha), cos(alpha));
    Matrix4::new(
        ct, -st * ca, st * sa, a * ct, //
        st, ct * ca, -ct * sa, a * st, //
        0.0, sa, ca, d, //
        0.0, 0.0, 0.0, 1.0,
    )
}

/// `T^0_0 = I, T^0_1, ..., T^0_n`.
pub fn intermediate_frames(
    model: &RobotModel,
    q: &JointVector,
) -> Result<Vec<Transform>, KinematicsError> {
    model.check_joints(q)?;
    Ok(frames_unchecked(model, q))
}

pub(crate) fn frames_unchecked(model: &RobotModel, q: &JointVector) -> Vec<Transform> {
    let mut frames = Vec::with_capacity(model.dof() + 1);
    let mut t = Transform::identity();
    frames.push(t);
    for (row, &qi) in model.rows().iter().zip(q.iter()) {
        let (theta, d) = row.joint_params(qi);
        t *= dh_transform(theta, d, row.a, row.alpha);
        frames.push(t);
    }
    frames
}

/// Roll/pitch/yaw of the rotation block, pitch in `[-pi/2, pi/2]`. At gimbal
/// lock the roll is pinned to zero and the yaw absorbs the rotation.
pub fn pose_from_transform(t: &Transform) -> Pose {
    let position = [t[(0, 3)], t[(1, 3)], t[(2, 3)]];
    let cp = hypot(t[(0, 0)], t[(1, 0)]);
    let pitch = atan2(-t[(2, 0)], cp);
    let (roll, yaw) = if cp > 1e-12 {
        (atan2(t[(2, 1)], t[(2, 2)]), atan2(t[(1, 0)], t[(0, 0)]))
    } else {
        (0.0, atan2(-t[(0, 1)], t[(1, 1)]))
    };
    Pose::new(position, [roll, pitch, yaw])
}

pub fn forward_kinematics(model: &RobotModel, q: &JointVector) -> Result<Pose, KinematicsError> {
    model.check_joints(q)?;
    Ok(fk_unchecked(model, q))
}

pub(crate) fn fk_unchecked(model: &RobotModel, q: &JointVector) -> Pose {
    let mut t = Transform::identity();
    for (row, &qi) in model.rows().iter().zip(q.iter()) {
        let (theta, d) = row.joint_params(qi);
        t *= dh_transform(theta, d, row.a, row.alpha);
    }
    pose_from_transform(&t)
}

pub(crate) fn z_axis(t: &Transform) -> Vector3<f64> {
    Vector3::new(t[(0, 2)], t[(1, 2)], t[(2, 2)])
}

pub(crate) fn origin(t: &Transform) -> Vector3<f64> {
    Vector3::new(t[(0, 3)], t[(1, 3)], t[(2, 3)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{deg_to_rad, FRAC_PI_2};

    #[test]
    fn rotation_matches_transform_extraction() {
        let p = Pose::new([0.0; 3], [0.3, -0.4, 1.1]);
        let mut t = Transform::identity();
        t.fixed_view_mut::<3, 3>(0, 0).copy_from(&p.rotation());
        let back = pose_from_transform(&t);
        for k in 0..3 {
            assert!((back.orientation[k] - p.orientation[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_error_about_single_axis() {
        let a = Pose::new([0.0; 3], [0.0, 0.0, 0.2]);
        let b = Pose::new([0.0; 3], [0.0, 0.0, -0.3]);
        let w = a.rotation_error(&b);
        assert!((w - Vector3::new(0.0, 0.0, 0.5)).norm() < 1e-12);
        let half = Pose::new([0.0; 3], [crate::math::PI, 0.0, 0.0]);
        let w = half.rotation_error(&Pose::new([0.0; 3], [0.0; 3]));
        assert!((w.norm() - crate::math::PI).abs() < 1e-9);
    }


    fn rpy_matrix(roll: f64, pitch: f64, yaw: f64) -> Transform {
        let rx = Matrix3::new(1.0, 0.0, 0.0, 0.0, cos(roll), -sin(roll), 0.0, sin(roll), cos(roll));
        let ry = Matrix3::new(cos(pitch), 0.0, sin(pitch), 0.0, 1.0, 0.0, -sin(pitch), 0.0, cos(pitch));
        let rz = Matrix3::new(cos(yaw), -sin(yaw), 0.0, sin(yaw), cos(yaw), 0.0, 0.0, 0.0, 1.0);
        let r = rz * ry * rx;
        let mut t = Transform::identity();
        t.fixed_view_mut::<3, 3>(0, 0).copy_from(&r);
        t
    }

    #[test]
    fn rpy_extraction_inverts_composition() {
        for &(r, p, y) in &[(0.3, -0.2, 1.1), (-2.9, 1.2, -0.4), (1.0, -1.5, 3.0)] {
            let pose = pose_from_transform(&rpy_matrix(r, p, y));
            assert!((pose.orientation[0] - r).abs() < 1e-12);
            assert!((pose.orientation[1] - p).abs() < 1e-12);
            assert!((pose.orientation[2] - y).abs() < 1e-12);
        }
    }

    #[test]
    fn gimbal_lock_pins_roll() {
        let t = rpy_matrix(0.4, FRAC_PI_2, 0.9);
        let pose = pose_from_transform(&t);
        assert_eq!(pose.orientation[0], 0.0);
        assert!((pose.orientation[1] - FRAC_PI_2).abs() < 1e-7);
        // same rotation regardless of the roll/yaw split
        let back = rpy_matrix(pose.orientation[0], pose.orientation[1], pose.orientation[2]);
        assert!((back - t).amax() < 1e-7);
    }

    #[test]
    fn dh_transform_matches_hand_product() {
        let t = dh_transform(deg_to_rad(90.0), 2.0, 3.0, 0.0);
        assert!((t[(0, 3)] - 0.0).abs() < 1e-15);
        assert!((t[(1, 3)] - 3.0).abs() < 1e-15);
        assert_eq!(t[(2, 3)], 2.0);
    }

    #[test]
    fn difference_wraps_angles() {
        let a = Pose::new([0.0; 3], [0.0, 0.0, 3.1]);
        let b = Pose::new([0.0; 3], [0.0, 0.0, -3.1]);
        let d = a.difference(&b, &TaskComponent::ALL);
        assert!((d[5] - (6.2 - 2.0 * crate::math::PI)).abs() < 1e-12);
    }
}
