//! Spectral decomposition of the Laplacian and the heat semigroup.
//!
//! The Laplacian acts on the n^2-dimensional space M_n, so its spectrum is
//! computed once from the assembled matrix representation and reused by the
//! Poisson solver and all flow code. Eigenvalues sit in ascending order;
//! anything below `1e-8 * lambda_max` is classified as kernel and snapped to
//! exactly zero, which keeps the semigroup trace-preserving even at huge
//! times. Eigenmatrices are orthonormal for the Hilbert-Schmidt inner
//! product. Inside a degenerate eigenspace the basis is whatever the
//! eigensolver produced -- deterministic, but nothing more; every contract
//! here is basis-independent.

use num_complex::Complex64;

use crate::algebra::{hermitian_eig, Matrix};
use crate::error::{Error, Result};
use crate::geometry::GeometryContext;

pub use crate::geometry::KERNEL_CLASSIFICATION_TOL;

/// Eigenvalues and eigenmatrices of the Laplacian for one geometry.
#[derive(Debug, Clone)]
pub struct Spectrum {
    ctx: GeometryContext,
    eigenvalues: Vec<f64>,
    eigenmatrices: Vec<Matrix>,
}

impl Spectrum {
    /// Assemble the matrix representation and diagonalize it.
    pub fn compute(ctx: &GeometryContext) -> Result<Self> {
        let sop = ctx.superoperator();
        let decomp = hermitian_eig(sop.matrix())?;
        let lambda_max = decomp.max_eigenvalue().max(0.0);
        let cut = KERNEL_CLASSIFICATION_TOL * lambda_max;
        let eigenvalues: Vec<f64> = decomp
            .eigenvalues
            .iter()
            .map(|&l| if l < cut { 0.0 } else { l })
            .collect();
        let n = ctx.dim();
        let d = n * n;
        let mut eigenmatrices: Vec<Matrix> = (0..d)
            .map(|j| {
                let col: Vec<Complex64> = (0..d).map(|i| decomp.eigenvectors[(i, j)]).collect();
                Matrix::unvec(n, &col)
            })
            .collect();
        // When the kernel is the scalar line, I/sqrt(n) is an exact kernel
        // element of the exact operator; replacing the solver's version with
        // it removes a non-decaying roundoff component from the semigroup.
        let kernel_dim = eigenvalues.iter().filter(|&&l| l == 0.0).count();
        if kernel_dim == 1 {
            let unit = Matrix::identity(n).scale(1.0 / (n as f64).sqrt());
            if unit.hs_inner(&eigenmatrices[0])?.norm() > 0.9 {
                eigenmatrices[0] = unit;
            }
        }
        Ok(Self {
            ctx: ctx.clone(),
            eigenvalues,
            eigenmatrices,
        })
    }

    pub fn ctx(&self) -> &GeometryContext {
        &self.ctx
    }

    /// Dimension n of the underlying matrices.
    pub fn base_dim(&self) -> usize {
        self.ctx.dim()
    }

    /// Number of eigenpairs, n^2.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Ascending eigenvalues, kernel snapped to exactly zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenmatrices(&self) -> &[Matrix] {
        &self.eigenmatrices
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn kernel_dimension(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l == 0.0).count()
    }

    /// Smallest nonzero eigenvalue: the spectral gap governing every decay
    /// rate downstream. Errors when the whole spectrum is kernel.
    pub fn spectral_gap(&self) -> Result<f64> {
        self.eigenvalues
            .iter()
            .find(|&&l| l > 0.0)
            .copied()
            .ok_or(Error::DegenerateGeometry {
                kernel_dim: self.kernel_dimension(),
            })
    }

    fn check_member(&self, a: &Matrix) -> Result<()> {
        if a.dim() != self.base_dim() {
            return Err(Error::DimensionMismatch {
                left: self.base_dim(),
                right: a.dim(),
            });
        }
        Ok(())
    }

    /// Heat semigroup action, sum_j e^{-lambda_j t} <phi_j, a> phi_j.
    pub fn semigroup_apply(&self, t: f64, a: &Matrix) -> Result<Matrix> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!(
                "semigroup time must be nonnegative (backward flow excluded), got {t}"
            )));
        }
        self.check_member(a)?;
        let mut out = Matrix::zeros(self.base_dim());
        for (lambda, phi) in self.eigenvalues.iter().zip(self.eigenmatrices.iter()) {
            let coeff = phi.hs_inner(a)? * (-lambda * t).exp();
            out = &out + &phi.scale_complex(coeff);
        }
        Ok(out)
    }

    /// sum_j e^{-lambda_j t}: n^2 at t = 0, decreasing, kernel dimension in
    /// the long-time limit.
    pub fn heat_trace(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!(
                "heat trace time must be nonnegative, got {t}"
            )));
        }
        Ok(self.eigenvalues.iter().map(|&l| (-l * t).exp()).sum())
    }
}
