//! Matrix representation of the Laplacian on vectorized elements.
//!
//! With column-stacking vec (vec(AXB) = (B^T kron A) vec X), a commutator
//! [w, .] becomes C_w = I kron w - w^T kron I, and the Laplacian becomes
//! C_y^2 + C_x^2. For Hermitian w the matrix C_w is Hermitian, so the
//! representation is Hermitian positive semidefinite by construction, with
//! vec(I) in its kernel.

use num_complex::Complex64;

use super::GeometryContext;
use crate::algebra::Matrix;
use crate::error::Result;

/// The n^2 x n^2 Laplacian matrix acting on column-stacked vectorizations.
#[derive(Debug, Clone)]
pub struct Superoperator {
    base_dim: usize,
    matrix: Matrix,
}

fn commutator_matrix(w: &Matrix) -> Matrix {
    let n = w.dim();
    let id = Matrix::identity(n);
    &id.kron(w) - &w.transpose().kron(&id)
}

impl Superoperator {
    pub fn assemble(ctx: &GeometryContext) -> Self {
        let cy = commutator_matrix(ctx.y());
        let cx = commutator_matrix(ctx.x());
        let matrix = &cy.matmul(&cy) + &cx.matmul(&cx);
        Self {
            base_dim: ctx.dim(),
            matrix,
        }
    }

    /// Dimension n of the underlying matrices.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Dimension n^2 of the vectorized space.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        assert_eq!(v.len(), d, "vector length mismatch");
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Apply through the vectorized representation: unvec(M vec(a)).
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        if a.dim() != self.base_dim {
            return Err(crate::error::Error::DimensionMismatch {
                left: self.base_dim,
                right: a.dim(),
            });
        }
        Ok(Matrix::unvec(self.base_dim, &self.apply_vec(&a.vec())))
    }
}
