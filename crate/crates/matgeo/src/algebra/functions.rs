//! Hermitian matrix functions and the entropy/distance functionals.

use super::{hermitian_eig, Matrix};
use crate::error::{Error, Result};

/// Scalar function applied through the spectral decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    Log,
    Exp,
    Power(f64),
}

/// V diag(f(lambda)) V† for Hermitian input.
///
/// `Log` requires strictly positive spectrum; `Power(p)` requires a
/// spectrum compatible with the exponent (nonnegative for fractional p,
/// nonzero for negative p).
pub fn matrix_function(a: &Matrix, f: MatrixFunction) -> Result<Matrix> {
    let d = hermitian_eig(a)?;
    match f {
        MatrixFunction::Log => {
            if d.min_eigenvalue() <= 0.0 {
                return Err(Error::NotPositive {
                    kind: "definite (log domain)",
                    eigenvalue: d.min_eigenvalue(),
                });
            }
            Ok(d.apply_scalar_fn(f64::ln))
        }
        MatrixFunction::Exp => Ok(d.apply_scalar_fn(f64::exp)),
        MatrixFunction::Power(p) => {
            let fractional = p.fract() != 0.0;
            if (fractional && d.min_eigenvalue() < 0.0) || (p < 0.0 && d.min_eigenvalue() <= 0.0) {
                return Err(Error::NotPositive {
                    kind: "compatible with the requested power",
                    eigenvalue: d.min_eigenvalue(),
                });
            }
            Ok(d.apply_scalar_fn(|l| l.powf(p)))
        }
    }
}

/// Von Neumann entropy S(u) = -tr(u ln u) for Hermitian positive
/// semidefinite u, with the 0 ln 0 = 0 convention.
///
/// Eigenvalues in [-1e-12 |u|, 0] are clamped to zero (eigensolver noise on
/// genuinely PSD input); anything below that margin is an error.
pub fn von_neumann_entropy(u: &Matrix) -> Result<f64> {
    let d = hermitian_eig(u)?;
    let tol = 1e-12 * u.hs_norm();
    let mut s = 0.0;
    for &l in &d.eigenvalues {
        if l < -tol {
            return Err(Error::NotPositive {
                kind: "semidefinite (entropy domain)",
                eigenvalue: l,
            });
        }
        if l > 0.0 {
            s -= l * l.ln();
        }
    }
    Ok(s)
}

/// Trace-norm distance: sum of absolute eigenvalues of a - b.
///
/// No 1/2 normalization; this is the plain Schatten-1 norm of the
/// difference, which is what pairs with [`eigenvalue_l1_gap`] below.
pub fn trace_distance(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let d = hermitian_eig(&(a - b))?;
    Ok(d.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// l1 distance between the ascending-sorted spectra of a and b.
///
/// Always at most [`trace_distance`] (Lidskii / Wielandt-Hoffman ordering).
pub fn eigenvalue_l1_gap(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let da = hermitian_eig(a)?;
    let db = hermitian_eig(b)?;
    Ok(da
        .eigenvalues
        .iter()
        .zip(db.eigenvalues.iter())
        .map(|(r, s)| (r - s).abs())
        .sum())
}

/// eta(s) = -s ln s on [0, 1], with eta(0) = 0.
pub fn eta(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("eta requires 0 <= s <= 1, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(-s * s.ln())
}
