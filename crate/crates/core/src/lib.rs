//! Kinematics and generalized inverses for serial manipulators whose joints
//! mix lengths and angles.
//!
//! The crate is `no_std` (with `alloc`). It provides
//!
//! * [`linalg`]: Moore-Penrose, scaling decomposition, unit-consistent and
//!   mixed block inverses;
//! * [`kinematics`]: Denavit-Hartenberg chains, forward kinematics and the
//!   analytical, geometric and numerical Jacobians;
//! * [`partition`]: the joint-axis rule that picks the mixed-inverse blocks;
//! * [`baseline`]: damped and filtered comparison inverses;
//! * [`solver`]: the iterative IK loop;
//! * [`catalog`]: bundled robots and seeded random motions.

#![no_std]

extern crate alloc;

pub mod baseline;
pub mod catalog;
pub mod kinematics;
pub mod linalg;
pub mod math;
pub mod method;
pub mod partition;
pub mod solver;

pub use kinematics::{JointKind, JointVector, LengthUnit, Pose, RobotModel, TaskComponent};
pub use linalg::{BlockPartition, Matrix, Vector};
pub use method::{InverseMethod, JacobianType};
pub use solver::{solve, IkConfig, IkResult, SolveError};
