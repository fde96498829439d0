use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DVector;

use super::{ensure_finite, LinalgError, Matrix, Vector};
use crate::math::{exp, ln};

pub const MAX_BALANCING_SWEEPS: usize = 10_000;
const BALANCE_TOLERANCE: f64 = 1e-13;

/// `A = diag(d) * a_prime * diag(e)` where every row and column of `a_prime`
/// has unit geometric mean over the absolute values of its nonzero entries.
#[derive(Debug, Clone)]
pub struct ScalingDecomposition {
    pub d: Vector,
    pub a_prime: Matrix,
    pub e: Vector,
}

impl ScalingDecomposition {
    pub fn reconstruct(&self) -> Matrix {
        let mut out = self.a_prime.clone();
        for c in 0..out.ncols() {
            for r in 0..out.nrows() {
                out[(r, c)] *= self.d[r] * self.e[c];
            }
        }
        out
    }
}

/// Balances `A` in log-absolute space by alternately removing the mean log
/// magnitude of each row and each column, over nonzero entries only.
///
/// Rows or columns without nonzero entries keep a scale of exactly 1.
pub fn scaling_decompose(a: &Matrix) -> Result<ScalingDecomposition, LinalgError> {
    ensure_finite(a)?;
    let (m, n) = a.shape();

    // column-major list of (row, col, log|a|) for the nonzero pattern
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    let mut row_count = vec![0usize; m];
    let mut col_count = vec![0usize; n];
    for c in 0..n {
        for r in 0..m {
            let v = a[(r, c)];
            if v != 0.0 {
                entries.push((r, c, ln(v.abs())));
                row_count[r] += 1;
                col_count[c] += 1;
            }
        }
    }

    let mut row_log = vec![0.0f64; m];
    let mut col_log = vec![0.0f64; n];
    let mut row_acc = vec![0.0f64; m];
    let mut col_acc = vec![0.0f64; n];
    let mut converged = entries.is_empty();
    let mut residual = 0.0;
    let mut sweeps = 0;

    while !converged && sweeps < MAX_BALANCING_SWEEPS {
        sweeps += 1;
        residual = 0.0f64;

        row_acc.iter_mut().for_each(|x| *x = 0.0);
        for &(r, c, l) in &entries {
            row_acc[r] += l - row_log[r] - col_log[c];
        }
        for r in 0..m {
            if row_count[r] > 0 {
                let adj = row_acc[r] / row_count[r] as f64;
                row_log[r] += adj;
                residual = residual.max(adj.abs());
            }
        }

        col_acc.iter_mut().for_each(|x| *x = 0.0);
        for &(r, c, l) in &entries {
            col_acc[c] += l - row_log[r] - col_log[c];
        }
        for c in 0..n {
            if col_count[c] > 0 {
                let adj = col_acc[c] / col_count[c] as f64;
                col_log[c] += adj;
                residual = residual.max(adj.abs());
            }
        }

        converged = residual < BALANCE_TOLERANCE;
    }

    if !converged {
        return Err(LinalgError::BalancingFailure { sweeps, residual });
    }

    let d = DVector::from_iterator(m, row_log.iter().map(|&x| exp(x)));
    let e = DVector::from_iterator(n, col_log.iter().map(|&x| exp(x)));
    let mut a_prime = a.clone();
    for c in 0..n {
        for r in 0..m {
            if a_prime[(r, c)] != 0.0 {
                a_prime[(r, c)] /= d[r] * e[c];
            }
        }
    }
    Ok(ScalingDecomposition { d, a_prime, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    pub(crate) fn log_means(a: &Matrix) -> (Vec<f64>, Vec<f64>) {
        let (m, n) = a.shape();
        let mut rows = vec![(0.0, 0usize); m];
        let mut cols = vec![(0.0, 0usize); n];
        for r in 0..m {
            for c in 0..n {
                let v = a[(r, c)];
                if v != 0.0 {
                    let l = ln(v.abs());
                    rows[r].0 += l;
                    rows[r].1 += 1;
                    cols[c].0 += l;
                    cols[c].1 += 1;
                }
            }
        }
        let f = |(s, k): (f64, usize)| if k == 0 { 0.0 } else { s / k as f64 };
        (rows.into_iter().map(f).collect(), cols.into_iter().map(f).collect())
    }

    #[test]
    fn positive_diagonal_moves_into_row_scales() {
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 0.25]);
        let s = scaling_decompose(&a).unwrap();
        assert!((s.a_prime.clone() - DMatrix::<f64>::identity(2, 2)).amax() < 1e-12);
        // the split between D and E is only defined up to a common factor per block
        assert!((s.d[0] * s.e[0] - 3.0).abs() < 1e-12);
        assert!((s.d[1] * s.e[1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn dense_two_by_two_is_balanced() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 4.0]);
        let s = scaling_decompose(&a).unwrap();
        let (rows, cols) = log_means(&s.a_prime);
        for g in rows.iter().chain(cols.iter()) {
            assert!(g.abs() < 1e-10, "{g}");
        }
        assert!((s.reconstruct() - a).amax() < 1e-10);
    }

    #[test]
    fn zeros_are_preserved() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 2.0, 3.0]);
        let s = scaling_decompose(&a).unwrap();
        assert_eq!(s.a_prime[(0, 1)], 0.0);
        let (rows, cols) = log_means(&s.a_prime);
        for g in rows.iter().chain(cols.iter()) {
            assert!(g.abs() < 1e-10);
        }
        assert!((s.reconstruct() - a).amax() < 1e-10);
    }

    #[test]
    fn zero_row_keeps_unit_scale() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 5.0, 0.0, 0.0, -2.0, 7.0]);
        let s = scaling_decompose(&a).unwrap();
        assert_eq!(s.d[1], 1.0);
        assert!((s.reconstruct() - a).amax() < 1e-10);
    }

    #[test]
    fn all_zero_matrix() {
        let a = DMatrix::zeros(2, 3);
        let s = scaling_decompose(&a).unwrap();
        assert!(s.d.iter().chain(s.e.iter()).all(|&x| x == 1.0));
    }
}
