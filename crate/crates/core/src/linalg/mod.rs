//! Dense generalized inverses.
//!
//! Everything here operates on real `DMatrix<f64>` values with no notion of
//! physical units. Zero-sized operands are accepted so that degenerate blocks
//! of a partitioned matrix flow through the same code paths; their inverses
//! are zero-sized as well.

mod inverse;
mod mixed;
mod scaling;
mod svd;

pub use inverse::{mp_inverse, mp_inverse_with_cutoff, rank_cutoff, uc_inverse};
pub use mixed::{mx_inverse, BlockPartition};
pub use scaling::{scaling_decompose, ScalingDecomposition, MAX_BALANCING_SWEEPS};
pub use svd::{svd, SvdFactors};

pub(crate) use svd::thin_svd;

use nalgebra::{DMatrix, DVector};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("singular value decomposition did not converge on a {rows}x{cols} matrix")]
    DecompositionFailure { rows: usize, cols: usize },
    #[error("scaling balance did not converge after {sweeps} sweeps (residual {residual:e})")]
    BalancingFailure { sweeps: usize, residual: f64 },
    #[error("block partition index {index} out of range for dimension {len}")]
    PartitionOutOfRange { index: usize, len: usize },
    #[error("block partition repeats index {index}")]
    PartitionDuplicate { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub(crate) fn ensure_finite(a: &Matrix) -> Result<(), LinalgError> {
    for c in 0..a.ncols() {
        for r in 0..a.nrows() {
            if !a[(r, c)].is_finite() {
                return Err(LinalgError::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}
