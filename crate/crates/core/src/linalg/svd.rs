use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::{ensure_finite, LinalgError, Matrix, Vector};

const SVD_MAX_ITERATIONS: usize = 10_000;

/// Full singular value decomposition `A = U * diag(S) * V^T`.
///
/// `u` is `m x m`, `v` is `n x n` and `singular_values` holds the `min(m, n)`
/// values in descending order.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: Matrix,
    pub singular_values: Vector,
    pub v: Matrix,
}

impl SvdFactors {
    /// `U * Sigma * V^T` with `Sigma` the `m x n` rectangular diagonal.
    pub fn reconstruct(&self) -> Matrix {
        let m = self.u.nrows();
        let n = self.v.nrows();
        let mut sigma = DMatrix::zeros(m, n);
        for (i, s) in self.singular_values.iter().enumerate() {
            sigma[(i, i)] = *s;
        }
        &self.u * sigma * self.v.transpose()
    }
}

/// Thin factors: `u` is `m x k`, `v` is `n x k`, `k = min(m, n)`, sorted descending.
pub(crate) struct ThinSvd {
    pub u: Matrix,
    pub s: Vec<f64>,
    pub v: Matrix,
}

pub(crate) fn thin_svd(a: &Matrix) -> Result<ThinSvd, LinalgError> {
    let (m, n) = a.shape();
    let k = m.min(n);
    if k == 0 {
        return Ok(ThinSvd {
            u: DMatrix::zeros(m, 0),
            s: Vec::new(),
            v: DMatrix::zeros(n, 0),
        });
    }
    let dec = a
        .clone()
        .try_svd(true, true, f64::EPSILON, SVD_MAX_ITERATIONS)
        .ok_or(LinalgError::DecompositionFailure { rows: m, cols: n })?;
    let (u, v_t) = match (dec.u, dec.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(LinalgError::DecompositionFailure { rows: m, cols: n }),
    };

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| dec.singular_values[j].total_cmp(&dec.singular_values[i]));

    let mut us = DMatrix::zeros(m, k);
    let mut vs = DMatrix::zeros(n, k);
    let mut s = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        us.set_column(dst, &u.column(src));
        vs.set_column(dst, &v_t.row(src).transpose());
        s.push(dec.singular_values[src].max(0.0));
    }
    Ok(ThinSvd { u: us, s, v: vs })
}

/// Extends an orthonormal `m x k` basis to an `m x m` orthogonal matrix.
fn complete_basis(basis: &Matrix) -> Matrix {
    let (m, k) = basis.shape();
    if k == m {
        return basis.clone();
    }
    let mut aug = DMatrix::zeros(m, k + m);
    aug.view_mut((0, 0), (m, k)).copy_from(basis);
    aug.view_mut((0, k), (m, m)).fill_with_identity();
    let mut q = aug.qr().q();
    for j in 0..k {
        q.set_column(j, &basis.column(j));
    }
    q
}

/// Singular value decomposition with square orthogonal factors.
pub fn svd(a: &Matrix) -> Result<SvdFactors, LinalgError> {
    ensure_finite(a)?;
    let thin = thin_svd(a)?;
    Ok(SvdFactors {
        u: complete_basis(&thin.u),
        singular_values: DVector::from_vec(thin.s),
        v: complete_basis(&thin.v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth_err(q: &Matrix) -> f64 {
        let n = q.nrows();
        (q * q.transpose() - DMatrix::<f64>::identity(n, n)).amax()
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let f = svd(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(f.singular_values.as_slice(), &[1.0, 1.0, 1.0]);
        assert!(orth_err(&f.u) < 1e-14);
        assert!((f.reconstruct() - DMatrix::<f64>::identity(3, 3)).amax() < 1e-14);
    }

    #[test]
    fn diagonal_with_zero() {
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 0.0]);
        let f = svd(&a).unwrap();
        assert!((f.singular_values[0] - 3.0).abs() < 1e-15);
        assert_eq!(f.singular_values[1], 0.0);
    }

    #[test]
    fn rectangular_factors_are_square_and_orthogonal() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, -4.0, 0.5, 2.0]);
        for m in [a.clone(), a.transpose()] {
            let f = svd(&m).unwrap();
            assert_eq!(f.u.shape(), (m.nrows(), m.nrows()));
            assert_eq!(f.v.shape(), (m.ncols(), m.ncols()));
            assert!(orth_err(&f.u) < 1e-12);
            assert!(orth_err(&f.v) < 1e-12);
            assert!(f.singular_values[0] >= f.singular_values[1]);
            assert!((f.reconstruct() - &m).amax() < 1e-12);
        }
    }

    #[test]
    fn rejects_nan() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, f64::NAN]);
        assert_eq!(svd(&a).unwrap_err(), LinalgError::NonFinite { row: 0, col: 1 });
    }
}
