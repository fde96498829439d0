//! Comparison inverse-Jacobian methods: damped least squares (JD), error
//! damping (ED), improved error damping (IED), numerical filtering (JF),
//! selective damping (SD) and singular value filtering (SVF).
//!
//! Every method except SD is expressed through the thin SVD
//! `J = U diag(s) V^T` as `V diag(f(s)) U^T` for a method-specific `f`.

use nalgebra::DMatrix;

use crate::linalg::{rank_cutoff, thin_svd, LinalgError, Matrix, Vector};

/// Tuning knobs for the baseline methods.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct BaselineParams {
    /// JD damping factor `lambda`.
    pub damping_lambda: f64,
    /// JF: smallest singular value is filtered below this threshold.
    pub jf_threshold: f64,
    /// JF: filtering strength at a singular value of zero.
    pub jf_lambda_max: f64,
    /// SVF shape parameter `nu >= 2`.
    pub svf_nu: f64,
    /// SVF floor `h(0) = sigma0`.
    pub svf_sigma0: f64,
    /// SD clamp on joint change per iteration (radians / model units).
    pub sd_gamma_max: f64,
    /// IED bias added to the squared error.
    pub ied_bias: f64,
}

impl Default for BaselineParams {
    fn default() -> Self {
        Self {
            damping_lambda: 0.1,
            jf_threshold: 0.01,
            jf_lambda_max: 0.1,
            svf_nu: 10.0,
            svf_sigma0: 0.005,
            sd_gamma_max: core::f64::consts::FRAC_PI_4,
            ied_bias: 1e-3,
        }
    }
}

fn spectral(j: &Matrix, f: impl Fn(usize, f64) -> f64) -> Result<Matrix, LinalgError> {
    crate::linalg::ensure_finite(j)?;
    let (m, n) = j.shape();
    let mut out = DMatrix::zeros(n, m);
    if m == 0 || n == 0 {
        return Ok(out);
    }
    let svd = thin_svd(j)?;
    for (i, &s) in svd.s.iter().enumerate() {
        let g = f(i, s);
        if g != 0.0 {
            out.ger(g, &svd.v.column(i), &svd.u.column(i), 1.0);
        }
    }
    Ok(out)
}

/// `s / (s^2 + mu)`, falling back to the pseudo-inverse rule when `mu == 0`.
fn damped_gain(s: f64, mu: f64, cutoff: f64) -> f64 {
    if mu > 0.0 {
        s / (s * s + mu)
    } else if s > 0.0 && s >= cutoff {
        1.0 / s
    } else {
        0.0
    }
}

fn sigma_max(j: &Matrix) -> Result<f64, LinalgError> {
    Ok(thin_svd(j)?.s.first().copied().unwrap_or(0.0))
}

/// JD: `J^T (J J^T + lambda^2 I)^-1`.
pub fn damped_jacobian(j: &Matrix, lambda: f64) -> Result<Matrix, LinalgError> {
    let cutoff = rank_cutoff(j.nrows(), j.ncols(), sigma_max(j)?);
    let mu = lambda * lambda;
    spectral(j, |_, s| damped_gain(s, mu, cutoff))
}

/// ED: `J^T (J J^T + e I)^-1` with `e` the current error norm.
pub fn error_damped(j: &Matrix, error_norm: f64) -> Result<Matrix, LinalgError> {
    let cutoff = rank_cutoff(j.nrows(), j.ncols(), sigma_max(j)?);
    spectral(j, |_, s| damped_gain(s, error_norm.max(0.0), cutoff))
}

/// IED: `(J^T J + (e^T e + bias) I)^-1 J^T`.
pub fn improved_error_damped(j: &Matrix, error: &Vector, bias: f64) -> Result<Matrix, LinalgError> {
    let mu = error.dot(error) + bias;
    spectral(j, |_, s| s / (s * s + mu))
}

/// JF: the smallest singular value `s_min` is replaced by
/// `s_min + lambda_max * (1 - s_min / threshold)` when it falls below
/// `threshold`; the remaining values are inverted as in the MP inverse.
pub fn filtered_jacobian(j: &Matrix, threshold: f64, lambda_max: f64) -> Result<Matrix, LinalgError> {
    let k = j.nrows().min(j.ncols());
    let cutoff = rank_cutoff(j.nrows(), j.ncols(), sigma_max(j)?);
    spectral(j, |i, s| {
        if i + 1 == k && s < threshold {
            1.0 / (s + lambda_max * (1.0 - s / threshold))
        } else if s > 0.0 && s >= cutoff {
            1.0 / s
        } else {
            0.0
        }
    })
}

/// SVF filter `h(s) = (s^3 + nu s^2 + 2 s + 2 s0) / (s^2 + nu s + 2)`.
pub fn svf_filter(s: f64, nu: f64, sigma0: f64) -> f64 {
    (s * s * s + nu * s * s + 2.0 * s + 2.0 * sigma0) / (s * s + nu * s + 2.0)
}

/// SVF: every singular value is replaced by [`svf_filter`] before inversion.
pub fn svf_inverse(j: &Matrix, nu: f64, sigma0: f64) -> Result<Matrix, LinalgError> {
    spectral(j, |_, s| 1.0 / svf_filter(s, nu, sigma0))
}

/// Scales `w` down so that its largest absolute entry is at most `limit`.
fn clamp_max_abs(w: &mut Vector, limit: f64) {
    let peak = w.amax();
    if peak > limit && peak > 0.0 {
        *w *= limit / peak;
    }
}

/// SD: joint update with per-singular-direction damping.
///
/// Each direction's response `(u_i . e / s_i) v_i` is clamped to
/// `gamma_i = min(1, N_i / M_i) * gamma_max`, where `N_i = |u_i| = 1` and
/// `M_i = (1 / s_i) * sum_j |v_ji| |J_j|` estimates how far the end effector
/// moves per unit change along `v_i`. The summed update is clamped to
/// `gamma_max` once more.
pub fn selectively_damped(j: &Matrix, error: &Vector, gamma_max: f64) -> Result<Vector, LinalgError> {
    crate::linalg::ensure_finite(j)?;
    let (m, n) = j.shape();
    if error.len() != m {
        return Err(LinalgError::DimensionMismatch { expected: m, found: error.len() });
    }
    let mut dq = Vector::zeros(n);
    if m == 0 || n == 0 {
        return Ok(dq);
    }
    let svd = thin_svd(j)?;
    let cutoff = rank_cutoff(m, n, svd.s[0]);
    let col_norms: Vector = Vector::from_iterator(n, j.column_iter().map(|c| c.norm()));
    for (i, &s) in svd.s.iter().enumerate() {
        if !(s > 0.0 && s >= cutoff) {
            continue;
        }
        let v = svd.v.column(i);
        let alpha = svd.u.column(i).dot(error);
        let reach: f64 = (0..n).map(|k| v[k].abs() * col_norms[k]).sum::<f64>() / s;
        let gamma = if reach > 0.0 { (1.0 / reach).min(1.0) * gamma_max } else { gamma_max };
        let mut phi: Vector = v.into_owned() * (alpha / s);
        clamp_max_abs(&mut phi, gamma);
        dq += phi;
    }
    clamp_max_abs(&mut dq, gamma_max);
    Ok(dq)
}
