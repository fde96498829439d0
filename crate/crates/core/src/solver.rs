//! Iterative Jacobian-based inverse kinematics.
//!
//! Each iteration evaluates the pose error `D_final - D_t` (angles wrapped),
//! builds the configured Jacobian at `Q_t`, and applies
//! `Q_{t+1} = Q_t + J^-1 * alpha * (D_final - D_t)` for the configured
//! generalized inverse. The mixed inverse recomputes its block partition
//! from the current joint axes every iteration.
//!
//! The geometric Jacobian's orientation rows are angular velocities, so with
//! it the orientation part of the driving error is the base-frame rotation
//! vector instead of the roll/pitch/yaw difference. Convergence is always
//! judged on the wrapped roll/pitch/yaw difference.

use alloc::vec::Vec;

use crate::baseline::BaselineParams;
use crate::kinematics::fk::fk_unchecked;
use crate::kinematics::{
    JointVector, KinematicsError, Pose, RobotModel, TaskComponent, DEFAULT_NUMERICAL_STEP,
};
use crate::linalg::LinalgError;
use crate::method::{InverseMethod, JacobianType};
use crate::partition::dynamic_partition;

/// A run is abandoned once its error norm exceeds this multiple of the initial one.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IkConfig {
    pub jacobian: JacobianType,
    pub method: InverseMethod,
    /// Step gain `alpha` in `(0, 1]`.
    pub attenuation: f64,
    pub max_iterations: usize,
    /// Model length units.
    pub position_tolerance: f64,
    /// Radians.
    pub orientation_tolerance: f64,
    pub numerical_step: f64,
    pub baseline: BaselineParams,
}

impl IkConfig {
    pub fn new(
        jacobian: JacobianType,
        method: InverseMethod,
        position_tolerance: f64,
        orientation_tolerance: f64,
    ) -> Self {
        Self {
            jacobian,
            method,
            attenuation: 1.0,
            max_iterations: 500,
            position_tolerance,
            orientation_tolerance,
            numerical_step: DEFAULT_NUMERICAL_STEP,
            baseline: BaselineParams::default(),
        }
    }

    pub fn with_attenuation(mut self, alpha: f64) -> Self {
        self.attenuation = alpha;
        self
    }

    pub fn with_max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if !(self.attenuation > 0.0 && self.attenuation <= 1.0) {
            return Err(SolveError::InvalidConfig("attenuation must lie in (0, 1]"));
        }
        if self.max_iterations == 0 {
            return Err(SolveError::InvalidConfig("max_iterations must be at least 1"));
        }
        if !(self.position_tolerance > 0.0 && self.orientation_tolerance > 0.0) {
            return Err(SolveError::InvalidConfig("tolerances must be positive"));
        }
        if !(self.numerical_step > 0.0 && self.numerical_step.is_finite()) {
            return Err(SolveError::InvalidConfig("numerical step must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IkResult {
    pub converged: bool,
    pub iterations: usize,
    pub final_joints: JointVector,
    /// One pose per iterate, starting with the initial pose.
    pub trajectory: Vec<Pose>,
    pub final_position_error: f64,
    pub final_orientation_error: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Model(#[from] KinematicsError),
    #[error("target pose is not finite")]
    NonFiniteTarget,
    #[error("jacobian failed at iteration {iteration}: {source}")]
    Jacobian {
        iteration: usize,
        source: KinematicsError,
    },
    #[error("inverse failed at iteration {iteration}: {source}")]
    Inverse { iteration: usize, source: LinalgError },
    #[error("diverged at iteration {iteration} (error norm {error_norm:e})")]
    Diverged { iteration: usize, error_norm: f64 },
}

impl SolveError {
    pub fn iteration(&self) -> Option<usize> {
        match self {
            SolveError::Jacobian { iteration, .. }
            | SolveError::Inverse { iteration, .. }
            | SolveError::Diverged { iteration, .. } => Some(*iteration),
            _ => None,
        }
    }
}

/// Euclidean position error and norm of the wrapped roll/pitch/yaw differences.
pub fn pose_error(current: &Pose, target: &Pose) -> (f64, f64) {
    task_pose_error(current, target, &TaskComponent::ALL)
}

/// [`pose_error`] restricted to the listed components.
pub fn task_pose_error(current: &Pose, target: &Pose, task: &[TaskComponent]) -> (f64, f64) {
    let d = target.difference(current, task);
    let mut pos = 0.0;
    let mut ori = 0.0;
    for (k, c) in task.iter().enumerate() {
        if c.is_position() {
            pos += d[k] * d[k];
        } else {
            ori += d[k] * d[k];
        }
    }
    (crate::math::sqrt(pos), crate::math::sqrt(ori))
}

pub fn solve(
    model: &RobotModel,
    q0: &JointVector,
    target: &Pose,
    cfg: &IkConfig,
) -> Result<IkResult, SolveError> {
    cfg.validate()?;
    model.check_joints(q0)?;
    if !target.is_finite() {
        return Err(SolveError::NonFiniteTarget);
    }
    let task = model.task();
    let check_orientation = model.has_orientation_task();

    let mut q = q0.clone();
    let mut pose = fk_unchecked(model, &q);
    let mut trajectory = Vec::with_capacity(16);
    trajectory.push(pose);
    let mut initial_norm = None;

    for t in 0.. {
        let (pos_err, ori_err) = task_pose_error(&pose, target, task);
        let done = pos_err <= cfg.position_tolerance
            && (!check_orientation || ori_err <= cfg.orientation_tolerance);
        if done || t == cfg.max_iterations {
            return Ok(IkResult {
                converged: done,
                iterations: t,
                final_joints: q,
                trajectory,
                final_position_error: pos_err,
                final_orientation_error: ori_err,
            });
        }

        let error = match cfg.jacobian {
            JacobianType::Geometric => target.twist_difference(&pose, task),
            _ => target.difference(&pose, task),
        };
        let norm = error.norm();
        let reference = *initial_norm.get_or_insert(norm);
        if !norm.is_finite() || norm > DIVERGENCE_FACTOR * reference {
            return Err(SolveError::Diverged { iteration: t, error_norm: norm });
        }

        let jac = cfg
            .jacobian
            .compute(model, &q, cfg.numerical_step)
            .map_err(|source| SolveError::Jacobian { iteration: t, source })?;
        let partition = match cfg.method {
            InverseMethod::Mx => Some(dynamic_partition(model, &q)?.partition),
            _ => None,
        };
        let dq = cfg
            .method
            .joint_update(&jac.matrix, &error, cfg.attenuation, &cfg.baseline, partition.as_ref())
            .map_err(|source| SolveError::Inverse { iteration: t, source })?;

        q += dq;
        if q.iter().any(|v| !v.is_finite()) {
            return Err(SolveError::Diverged { iteration: t + 1, error_norm: f64::INFINITY });
        }
        pose = fk_unchecked(model, &q);
        trajectory.push(pose);
    }
    unreachable!("loop returns once t reaches max_iterations")
}
