use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{ensure_finite, mp_inverse, uc_inverse, LinalgError, Matrix};

/// Rows and columns that form the unit-consistent `W` block. Everything else
/// belongs to the rotation-consistent `Z` block.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockPartition {
    pub w_rows: Vec<usize>,
    pub w_cols: Vec<usize>,
}

impl BlockPartition {
    pub fn new(w_rows: Vec<usize>, w_cols: Vec<usize>) -> Result<Self, LinalgError> {
        for set in [&w_rows, &w_cols] {
            for (i, x) in set.iter().enumerate() {
                if set[..i].contains(x) {
                    return Err(LinalgError::PartitionDuplicate { index: *x });
                }
            }
        }
        Ok(Self { w_rows, w_cols })
    }

    /// Empty `W`: the mixed inverse is the Moore-Penrose inverse.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Everything in `W`: the mixed inverse is the unit-consistent inverse.
    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            w_rows: (0..rows).collect(),
            w_cols: (0..cols).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.w_rows.is_empty() && self.w_cols.is_empty()
    }

    pub fn covers(&self, rows: usize, cols: usize) -> bool {
        self.w_rows.len() == rows && self.w_cols.len() == cols
    }

    pub fn validate(&self, rows: usize, cols: usize) -> Result<(), LinalgError> {
        for (set, len) in [(&self.w_rows, rows), (&self.w_cols, cols)] {
            for (i, &x) in set.iter().enumerate() {
                if x >= len {
                    return Err(LinalgError::PartitionOutOfRange { index: x, len });
                }
                if set[..i].contains(&x) {
                    return Err(LinalgError::PartitionDuplicate { index: x });
                }
            }
        }
        Ok(())
    }

    /// `W` indices first (in the stored order), then the rest ascending.
    fn order(w: &[usize], len: usize) -> Vec<usize> {
        let mut out: Vec<usize> = w.to_vec();
        out.extend((0..len).filter(|i| !w.contains(i)));
        out
    }
}

fn block(a: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| a[(rows[r], cols[c])])
}

/// Mixed inverse of `A` under a `W`/`Z` block partition.
///
/// With `A` permuted to `[[W, X], [Y, Z]]`:
///
/// ```text
/// A^-M = [ (W - X Z^+ Y)^U          -W^U X (Z - Y W^U X)^+ ]
///        [ -Z^+ Y (W - X Z^+ Y)^U    (Z - Y W^U X)^+       ]
/// ```
///
/// where `^U` is [`uc_inverse`] and `^+` is [`mp_inverse`]. The result is
/// permuted back to the original row/column order of `A^T`.
pub fn mx_inverse(a: &Matrix, partition: &BlockPartition) -> Result<Matrix, LinalgError> {
    ensure_finite(a)?;
    let (m, n) = a.shape();
    partition.validate(m, n)?;

    let row_order = BlockPartition::order(&partition.w_rows, m);
    let col_order = BlockPartition::order(&partition.w_cols, n);
    let r = partition.w_rows.len();
    let c = partition.w_cols.len();
    let (w_rows, z_rows) = row_order.split_at(r);
    let (w_cols, z_cols) = col_order.split_at(c);

    let w = block(a, w_rows, w_cols);
    let x = block(a, w_rows, z_cols);
    let y = block(a, z_rows, w_cols);
    let z = block(a, z_rows, z_cols);

    let z_p = mp_inverse(&z)?;
    let w_u = uc_inverse(&w)?;
    let schur_w_u = uc_inverse(&(&w - &x * &z_p * &y))?;
    let schur_z_p = mp_inverse(&(&z - &y * &w_u * &x))?;

    let top_right = -(&w_u * &x * &schur_z_p);
    let bottom_left = -(&z_p * &y * &schur_w_u);

    let mut out = DMatrix::zeros(n, m);
    let mut put = |blk: &Matrix, out_rows: &[usize], out_cols: &[usize]| {
        for (i, &orow) in out_rows.iter().enumerate() {
            for (j, &ocol) in out_cols.iter().enumerate() {
                out[(orow, ocol)] = blk[(i, j)];
            }
        }
    };
    put(&schur_w_u, w_cols, w_rows);
    put(&top_right, w_cols, z_rows);
    put(&bottom_left, z_cols, w_rows);
    put(&schur_z_p, z_cols, z_rows);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sample() -> Matrix {
        DMatrix::from_row_slice(
            4,
            3,
            &[1.0, 2.0, -0.5, 0.3, -1.0, 4.0, 2.2, 0.7, 1.1, -3.0, 0.2, 0.9],
        )
    }

    #[test]
    fn empty_partition_is_mp() {
        let a = sample();
        assert_eq!(
            mx_inverse(&a, &BlockPartition::empty()).unwrap(),
            mp_inverse(&a).unwrap()
        );
    }

    #[test]
    fn full_partition_is_uc() {
        let a = sample();
        assert_eq!(
            mx_inverse(&a, &BlockPartition::full(4, 3)).unwrap(),
            uc_inverse(&a).unwrap()
        );
    }

    #[test]
    fn rows_only_partition_zeros_w_columns_of_result() {
        let a = sample();
        let p = BlockPartition::new(vec![1], vec![]).unwrap();
        let out = mx_inverse(&a, &p).unwrap();
        assert!(out.column(1).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_bad_partitions() {
        let a = sample();
        let p = BlockPartition { w_rows: vec![4], w_cols: vec![] };
        assert!(matches!(
            mx_inverse(&a, &p),
            Err(LinalgError::PartitionOutOfRange { index: 4, len: 4 })
        ));
        assert!(BlockPartition::new(vec![0, 0], vec![]).is_err());
    }
}
