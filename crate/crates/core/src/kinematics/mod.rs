//! Denavit-Hartenberg chains, forward kinematics and Jacobians.
//!
//! Frames follow the classic (distal) convention
//! `T_i = RotZ(theta) * TransZ(d) * TransX(a) * RotX(alpha)`. Orientation is
//! reported as roll/pitch/yaw with `R = Rz(yaw) * Ry(pitch) * Rx(roll)`.

pub(crate) mod fk;
mod jacobian;
mod model;

pub use fk::{forward_kinematics, intermediate_frames, pose_from_transform, Pose, Transform};
pub use jacobian::{
    analytical_jacobian, geometric_jacobian, numerical_jacobian, JacobianMatrix,
    DEFAULT_NUMERICAL_STEP, GIMBAL_MARGIN,
};
pub use model::{
    rescale_units, DhRow, JointKind, JointRange, JointVector, LengthUnit, RobotModel,
    TaskComponent,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KinematicsError {
    #[error("robot model has no joints")]
    EmptyChain,
    #[error("robot model has no task components")]
    EmptyTask,
    #[error("task component {0:?} listed twice")]
    DuplicateTask(TaskComponent),
    #[error("joint {joint} has a non-finite parameter")]
    NonFiniteParameter { joint: usize },
    #[error("joint {joint} range is empty or reversed")]
    BadRange { joint: usize },
    #[error("joint vector has {found} entries, model has {expected} joints")]
    JointCount { expected: usize, found: usize },
    #[error("joint vector contains a non-finite value")]
    NonFiniteJoint,
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("orientation is ill-conditioned near gimbal lock (pitch {pitch})")]
    GimbalLock { pitch: f64 },
}
