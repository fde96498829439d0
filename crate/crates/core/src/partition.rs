//! Assigns Jacobian rows and columns to the blocks of the mixed inverse.
//!
//! A prismatic joint whose axis is tilted by an earlier revolute joint mixes
//! length and angle units in the position rows, so that prismatic joint and
//! every such revolute joint go into the unit-consistent `W` block together
//! with the position rows. Revolute joints whose axes stay parallel
//! (or anti-parallel) to the prismatic axis, and all revolute joints after
//! the last prismatic one, remain in the rotation-consistent `Z` block.

use alloc::vec::Vec;

use nalgebra::{DVector, Vector3};

use crate::kinematics::fk::{frames_unchecked, z_axis};
use crate::kinematics::{JointKind, JointVector, KinematicsError, RobotModel};
use crate::linalg::BlockPartition;

/// `|z_a x z_b|` below this counts as parallel.
pub const PARALLEL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ReducedForm {
    PureMp,
    PureUc,
    TrueMixed,
}

/// For one prismatic joint, the earlier revolute joints whose axes are not
/// parallel to it.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AxisReport {
    pub prismatic_joint: usize,
    pub non_parallel_revolute: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionDecision {
    pub partition: BlockPartition,
    pub reduced_form: ReducedForm,
    pub axis_report: Vec<AxisReport>,
}

/// Generic joint configuration used for the static decision: revolute joint
/// `i` sits at `0.5 + 0.37 * i` rad, prismatic joints at their range midpoint.
///
/// Axis alignment that only occurs at special angles (zero included) is a
/// temporary alignment, not a property of the D-H table, so the static rule
/// is evaluated away from it.
pub fn reference_configuration(model: &RobotModel) -> JointVector {
    DVector::from_iterator(
        model.dof(),
        model.rows().iter().enumerate().map(|(i, row)| match row.kind {
            JointKind::Revolute => 0.5 + 0.37 * i as f64,
            JointKind::Prismatic => 0.5 * (row.range.min + row.range.max),
        }),
    )
}

fn is_parallel(a: &Vector3<f64>, b: &Vector3<f64>) -> bool {
    a.cross(b).norm() < PARALLEL_TOLERANCE
}

fn decide(model: &RobotModel, axes: &[Vector3<f64>]) -> PartitionDecision {
    let n = model.dof();
    let rows = model.rows();
    let mut in_w = alloc::vec![false; n];
    let mut axis_report = Vec::new();

    for j in (0..n).filter(|&j| rows[j].kind == JointKind::Prismatic) {
        let non_parallel: Vec<usize> = (0..j)
            .filter(|&i| rows[i].kind == JointKind::Revolute)
            .filter(|&i| !is_parallel(&axes[i], &axes[j]))
            .collect();
        if !non_parallel.is_empty() {
            in_w[j] = true;
            for &i in &non_parallel {
                in_w[i] = true;
            }
        }
        axis_report.push(AxisReport {
            prismatic_joint: j,
            non_parallel_revolute: non_parallel,
        });
    }

    let w_cols: Vec<usize> = (0..n).filter(|&i| in_w[i]).collect();
    let w_rows: Vec<usize> = if w_cols.is_empty() {
        Vec::new()
    } else {
        model
            .task()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_position())
            .map(|(r, _)| r)
            .collect()
    };

    let partition = BlockPartition { w_rows, w_cols };
    let reduced_form = if partition.is_empty() {
        ReducedForm::PureMp
    } else if partition.covers(model.task().len(), n) {
        ReducedForm::PureUc
    } else {
        ReducedForm::TrueMixed
    };
    PartitionDecision {
        partition,
        reduced_form,
        axis_report,
    }
}

/// Partition evaluated with the joint axes at configuration `q`.
pub fn dynamic_partition(
    model: &RobotModel,
    q: &JointVector,
) -> Result<PartitionDecision, KinematicsError> {
    model.check_joints(q)?;
    let frames = frames_unchecked(model, q);
    // joint i moves along / about z of frame i-1
    let axes: Vec<Vector3<f64>> = frames[..model.dof()].iter().map(z_axis).collect();
    Ok(decide(model, &axes))
}

/// Partition implied by the D-H structure, i.e. [`dynamic_partition`] at
/// [`reference_configuration`].
pub fn static_partition(model: &RobotModel) -> PartitionDecision {
    let q = reference_configuration(model);
    dynamic_partition(model, &q).expect("reference configuration matches the model")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{DhRow, JointRange, LengthUnit, TaskComponent};
    use alloc::vec;

    fn rp_chain(alpha1_deg: f64) -> RobotModel {
        RobotModel::new(
            "rp",
            vec![
                DhRow::revolute_deg(0.0, 0.0, 0.4, alpha1_deg),
                DhRow::prismatic_deg(0.0, 0.0, 0.0, 0.0, JointRange::new(0.0, 1.0)),
            ],
            LengthUnit::M,
            vec![TaskComponent::X, TaskComponent::Y, TaskComponent::Z],
        )
        .unwrap()
    }

    #[test]
    fn rp_chain_alignment_decides_the_block() {
        for k in 0..25 {
            let q = DVector::from_vec(vec![-3.0 + 0.25 * k as f64, 0.1 * k as f64]);
            let aligned = dynamic_partition(&rp_chain(0.0), &q).unwrap();
            assert_eq!(aligned.reduced_form, ReducedForm::PureMp);
            let tilted = dynamic_partition(&rp_chain(90.0), &q).unwrap();
            assert_eq!(tilted.reduced_form, ReducedForm::PureUc);
            assert_eq!(tilted.axis_report[0].non_parallel_revolute, vec![0]);
        }
    }

    #[test]
    fn all_revolute_is_pure_mp() {
        let m = RobotModel::new(
            "rr",
            vec![DhRow::revolute_deg(0.0, 0.0, 1.0, 90.0), DhRow::revolute_deg(0.0, 0.0, 1.0, 0.0)],
            LengthUnit::M,
            TaskComponent::ALL.to_vec(),
        )
        .unwrap();
        let d = static_partition(&m);
        assert_eq!(d.reduced_form, ReducedForm::PureMp);
        assert!(d.axis_report.is_empty());
    }

    #[test]
    fn anti_parallel_counts_as_parallel() {
        assert!(is_parallel(&Vector3::z(), &(-Vector3::z())));
        assert!(!is_parallel(&Vector3::z(), &Vector3::x()));
    }
}
