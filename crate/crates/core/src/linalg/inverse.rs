use nalgebra::DMatrix;

use super::{ensure_finite, scaling_decompose, thin_svd, LinalgError, Matrix};

const RANK_EPS: f64 = 1e-12;

/// Singular values strictly below this are treated as zero.
pub fn rank_cutoff(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    rows.max(cols) as f64 * sigma_max * RANK_EPS
}

/// Moore-Penrose inverse `V * S^+ * U^T`.
pub fn mp_inverse(a: &Matrix) -> Result<Matrix, LinalgError> {
    mp_inverse_with_cutoff(a, None)
}

/// Moore-Penrose inverse with an explicit singular value cutoff; `None`
/// selects [`rank_cutoff`].
pub fn mp_inverse_with_cutoff(a: &Matrix, cutoff: Option<f64>) -> Result<Matrix, LinalgError> {
    ensure_finite(a)?;
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(DMatrix::zeros(n, m));
    }
    let svd = thin_svd(a)?;
    let tol = cutoff.unwrap_or_else(|| rank_cutoff(m, n, svd.s[0]));
    let mut out = DMatrix::zeros(n, m);
    for (i, &s) in svd.s.iter().enumerate() {
        if s > 0.0 && s >= tol {
            // out += v_i * u_i^T / s
            out.ger(1.0 / s, &svd.v.column(i), &svd.u.column(i), 1.0);
        }
    }
    Ok(out)
}

/// Unit-consistent inverse `E^-1 * (A')^+ * D^-1` from the scaling
/// decomposition `A = D * A' * E`.
pub fn uc_inverse(a: &Matrix) -> Result<Matrix, LinalgError> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(DMatrix::zeros(n, m));
    }
    let scaled = scaling_decompose(a)?;
    let mut out = mp_inverse(&scaled.a_prime)?;
    for c in 0..m {
        for r in 0..n {
            out[(r, c)] /= scaled.e[r] * scaled.d[c];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        a.shape() == b.shape() && (a - b).amax() <= tol
    }

    #[test]
    fn diagonal_pseudo_inverse() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]);
        let p = mp_inverse(&a).unwrap();
        assert!(close(&p, &DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.0]), 1e-15));
    }

    #[test]
    fn uc_matches_two_sided_inverse() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let want = DMatrix::from_row_slice(2, 2, &[-2.0, 1.0, 1.5, -0.5]);
        assert!(close(&uc_inverse(&a).unwrap(), &want, 1e-12));
        assert!(close(&mp_inverse(&a).unwrap(), &want, 1e-12));
    }

    #[test]
    fn empty_operands_give_empty_transposed_shape() {
        let a = DMatrix::<f64>::zeros(3, 0);
        assert_eq!(mp_inverse(&a).unwrap().shape(), (0, 3));
        assert_eq!(uc_inverse(&a).unwrap().shape(), (0, 3));
    }

    #[test]
    fn zero_matrix_inverts_to_zero() {
        let a = DMatrix::<f64>::zeros(2, 3);
        assert_eq!(mp_inverse(&a).unwrap(), DMatrix::zeros(3, 2));
        assert_eq!(uc_inverse(&a).unwrap(), DMatrix::zeros(3, 2));
    }

    #[test]
    fn tiny_singular_value_is_dropped() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-14]);
        let p = mp_inverse(&a).unwrap();
        assert_eq!(p[(1, 1)], 0.0);
        assert!((p[(0, 0)] - 1.0).abs() < 1e-15);
    }
}
