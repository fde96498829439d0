//! Uniform dispatch over Jacobian constructions and inverse methods.

use nalgebra::DVector;

use crate::baseline::{self, BaselineParams};
use crate::kinematics::{
    analytical_jacobian, geometric_jacobian, numerical_jacobian, JacobianMatrix, JointVector,
    KinematicsError, RobotModel,
};
use crate::linalg::{mp_inverse, mx_inverse, uc_inverse, BlockPartition, LinalgError, Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum JacobianType {
    Analytical,
    Geometric,
    Numerical,
}

impl JacobianType {
    pub const ALL: [JacobianType; 3] =
        [JacobianType::Numerical, JacobianType::Geometric, JacobianType::Analytical];

    pub fn label(self) -> &'static str {
        match self {
            JacobianType::Analytical => "analytical",
            JacobianType::Geometric => "geometric",
            JacobianType::Numerical => "numerical",
        }
    }

    /// Accepts the full label or its first letter, case-insensitive.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        Self::ALL.into_iter().find(|j| {
            j.label().eq_ignore_ascii_case(s) || j.label()[..1].eq_ignore_ascii_case(s)
        })
    }

    pub fn compute(
        self,
        model: &RobotModel,
        q: &JointVector,
        numerical_step: f64,
    ) -> Result<JacobianMatrix, KinematicsError> {
        match self {
            JacobianType::Analytical => analytical_jacobian(model, q),
            JacobianType::Geometric => geometric_jacobian(model, q),
            JacobianType::Numerical => numerical_jacobian(model, q, numerical_step),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum InverseMethod {
    Mp,
    Ed,
    Jf,
    Jd,
    Sd,
    Ied,
    Svf,
    Uc,
    Mx,
}

impl InverseMethod {
    pub const ALL: [InverseMethod; 9] = [
        InverseMethod::Mp,
        InverseMethod::Ed,
        InverseMethod::Jf,
        InverseMethod::Jd,
        InverseMethod::Sd,
        InverseMethod::Ied,
        InverseMethod::Svf,
        InverseMethod::Uc,
        InverseMethod::Mx,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InverseMethod::Mp => "MP",
            InverseMethod::Ed => "ED",
            InverseMethod::Jf => "JF",
            InverseMethod::Jd => "JD",
            InverseMethod::Sd => "SD",
            InverseMethod::Ied => "IED",
            InverseMethod::Svf => "SVF",
            InverseMethod::Uc => "UC",
            InverseMethod::Mx => "MX",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        Self::ALL.into_iter().find(|m| m.label().eq_ignore_ascii_case(s))
    }

    /// Generalized inverse of `j`, or `None` for SD which only yields updates.
    ///
    /// `error` is the current task-space error (ED and IED damp with it);
    /// `partition` is required by MX and ignored otherwise.
    pub fn inverse_matrix(
        self,
        j: &Matrix,
        error: &Vector,
        params: &BaselineParams,
        partition: Option<&BlockPartition>,
    ) -> Result<Option<Matrix>, LinalgError> {
        let inv = match self {
            InverseMethod::Mp => mp_inverse(j)?,
            InverseMethod::Uc => uc_inverse(j)?,
            InverseMethod::Mx => {
                let empty = BlockPartition::empty();
                mx_inverse(j, partition.unwrap_or(&empty))?
            }
            InverseMethod::Ed => baseline::error_damped(j, error.norm())?,
            InverseMethod::Jf => baseline::filtered_jacobian(j, params.jf_threshold, params.jf_lambda_max)?,
            InverseMethod::Jd => baseline::damped_jacobian(j, params.damping_lambda)?,
            InverseMethod::Ied => baseline::improved_error_damped(j, error, params.ied_bias)?,
            InverseMethod::Svf => baseline::svf_inverse(j, params.svf_nu, params.svf_sigma0)?,
            InverseMethod::Sd => return Ok(None),
        };
        Ok(Some(inv))
    }

    /// Joint update `dq` for the step `attenuation * error`.
    pub fn joint_update(
        self,
        j: &Matrix,
        error: &Vector,
        attenuation: f64,
        params: &BaselineParams,
        partition: Option<&BlockPartition>,
    ) -> Result<DVector<f64>, LinalgError> {
        let step = error * attenuation;
        match self.inverse_matrix(j, error, params, partition)? {
            Some(inv) => Ok(inv * step),
            None => baseline::selectively_damped(j, &step, params.sd_gamma_max),
        }
    }
}
