//! Bundled serial robots and the random motion generator.
//!
//! Lengths are stored in millimetres. Revolute joints sample `[-180, 180]`
//! degrees; prismatic ranges are per robot.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kinematics::fk::fk_unchecked;
use crate::kinematics::{
    DhRow, JointRange, JointVector, LengthUnit, Pose, RobotModel, TaskComponent,
};

pub const ROBOT_NAMES: [&str; 6] = ["planar3", "scara4", "stanford5", "stanford6", "gp66plus1", "wam7"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown robot {0:?}")]
    UnknownRobot(alloc::string::String),
    #[error("motion count must be at least 1")]
    ZeroCount,
}

fn r(theta: f64, d: f64, a: f64, alpha: f64) -> DhRow {
    DhRow::revolute_deg(theta, d, a, alpha)
}

fn p(theta: f64, d: f64, a: f64, alpha: f64, min_mm: f64, max_mm: f64) -> DhRow {
    DhRow::prismatic_deg(theta, d, a, alpha, JointRange::new(min_mm, max_mm))
}

pub fn load_robot(name: &str) -> Result<RobotModel, CatalogError> {
    let full = TaskComponent::ALL.to_vec();
    let (rows, task) = match name {
        "planar3" => (
            vec![r(0.0, 0.0, 1000.0, 0.0), r(0.0, 0.0, 1100.0, 90.0), p(0.0, 0.0, 0.0, 0.0, -1000.0, 0.0)],
            vec![TaskComponent::X, TaskComponent::Y],
        ),
        "scara4" => (
            vec![
                r(0.0, 400.0, 250.0, 0.0),
                r(0.0, 0.0, 150.0, 180.0),
                p(0.0, 0.0, 0.0, 0.0, 0.0, 300.0),
                r(0.0, 150.0, 0.0, 0.0),
            ],
            full,
        ),
        "stanford5" => (
            vec![
                r(0.0, 0.0, 0.0, -90.0),
                r(0.0, 140.0, 0.0, 90.0),
                p(0.0, 0.0, 0.0, 0.0, 0.0, 500.0),
                r(0.0, 0.0, 0.0, -90.0),
                r(0.0, 0.0, 0.0, 90.0),
            ],
            full,
        ),
        "stanford6" => (
            vec![
                r(0.0, 0.0, 0.0, -90.0),
                r(0.0, 140.0, 0.0, 90.0),
                p(0.0, 0.0, 0.0, 0.0, 0.0, 500.0),
                r(0.0, 0.0, 0.0, -90.0),
                r(0.0, 0.0, 0.0, 90.0),
                r(0.0, 8.5, 0.0, 0.0),
            ],
            full,
        ),
        "gp66plus1" => (
            vec![
                r(0.0, 0.0, 0.0, 90.0),
                r(0.0, 0.0, 250.0, 90.0),
                p(0.0, 0.0, 0.0, 0.0, 0.0, 500.0),
                r(0.0, 0.0, 0.0, 90.0),
                r(0.0, 140.0, 0.0, 90.0),
                r(0.0, 0.0, 0.0, 90.0),
                r(0.0, 0.0, 0.0, 0.0),
            ],
            full,
        ),
        "wam7" => (
            vec![
                r(0.0, 0.0, 0.0, -90.0),
                r(0.0, 0.0, 0.0, 90.0),
                r(0.0, 550.0, 45.0, -90.0),
                r(0.0, 0.0, -45.0, 90.0),
                r(0.0, 300.0, 0.0, -90.0),
                r(0.0, 0.0, 0.0, 90.0),
                r(0.0, 60.0, 0.0, 0.0),
            ],
            full,
        ),
        other => return Err(CatalogError::UnknownRobot(other.into())),
    };
    Ok(RobotModel::new(name, rows, LengthUnit::Mm, task).expect("bundled models are valid"))
}

/// One benchmark motion: start configuration and an FK-reachable target.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionSpec {
    pub index: usize,
    pub seed: u64,
    pub q0: JointVector,
    /// Joint vector whose forward kinematics produced `target`.
    pub q_target: JointVector,
    pub target: Pose,
}

impl MotionSpec {
    /// Expresses the motion in the unit of `model`, which must be a rescaled
    /// copy of the model the motion was generated for (`from`).
    pub fn in_unit(&self, from: LengthUnit, model: &RobotModel) -> MotionSpec {
        let k = from.factor_to(model.unit());
        let scale = |q: &JointVector| {
            DVector::from_iterator(
                q.len(),
                model.rows().iter().zip(q.iter()).map(|(row, &v)| match row.kind {
                    crate::kinematics::JointKind::Revolute => v,
                    crate::kinematics::JointKind::Prismatic => v * k,
                }),
            )
        };
        MotionSpec {
            index: self.index,
            seed: self.seed,
            q0: scale(&self.q0),
            q_target: scale(&self.q_target),
            target: self.target.scale_position(k),
        }
    }
}

fn sample_joints(model: &RobotModel, rng: &mut ChaCha8Rng) -> JointVector {
    DVector::from_iterator(
        model.dof(),
        model
            .rows()
            .iter()
            .map(|row| rng.random_range(row.range.min..=row.range.max))
            .collect::<Vec<_>>(),
    )
}

/// Motion `k` draws from ChaCha8 seeded with `seed` on stream `k`, so each
/// motion is reproducible on its own and independent of evaluation order.
pub fn motion(model: &RobotModel, seed: u64, index: usize) -> MotionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let q0 = sample_joints(model, &mut rng);
    let q_target = sample_joints(model, &mut rng);
    let target = fk_unchecked(model, &q_target);
    MotionSpec {
        index,
        seed,
        q0,
        q_target,
        target,
    }
}

pub fn random_motions(
    model: &RobotModel,
    count: usize,
    seed: u64,
) -> Result<Vec<MotionSpec>, CatalogError> {
    if count == 0 {
        return Err(CatalogError::ZeroCount);
    }
    Ok((0..count).map(|k| motion(model, seed, k)).collect())
}
