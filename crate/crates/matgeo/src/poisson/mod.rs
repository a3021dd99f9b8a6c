//! Poisson solver: invert the Laplacian on the trace-free subspace.
//!
//! `L a = b` is solvable modulo scalars exactly when b has zero trace, and
//! the solver returns the canonical trace-free representative via the
//! spectral pseudo-inverse `a = sum_{lambda_j > 0} <phi_j, b> phi_j / lambda_j`.
//! The residual is measured against the Laplacian applied directly as a
//! double commutator, not through the same eigen-expansion, so it is an
//! honest accuracy figure.

use serde::{Deserialize, Serialize};

use crate::algebra::{random_hermitian, Matrix, SplitMix64};
use crate::error::{Error, Result};
use crate::geometry::GeometryContext;
use crate::spectral::Spectrum;

/// Default relative tolerance on |tr(b)| for solvability.
pub const SOLVABILITY_TOL: f64 = 1e-10;

/// Canonical solution of `L a = b` together with its quality figures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoissonSolution {
    /// The trace-free representative of the solution class.
    pub solution: Matrix,
    /// |L solution - b| / max(1, |b|).
    pub residual: f64,
    /// Norm of the trace-free part of the source.
    pub projected_source_norm: f64,
}

/// Solvability test: |tr(b)| <= tol * max(1, |b|).
pub fn is_solvable(b: &Matrix, tol: f64) -> bool {
    b.trace().norm() <= tol * b.hs_norm().max(1.0)
}

/// Solve `L a = b` for trace-free b, returning the unique trace-free
/// solution. Rejects sources with nonzero trace and geometries whose
/// Laplacian kernel is larger than the scalar line.
pub fn solve_poisson(s: &Spectrum, b: &Matrix) -> Result<PoissonSolution> {
    if b.dim() != s.base_dim() {
        return Err(Error::DimensionMismatch {
            left: s.base_dim(),
            right: b.dim(),
        });
    }
    if !is_solvable(b, SOLVABILITY_TOL) {
        return Err(Error::NotSolvable {
            trace_abs: b.trace().norm(),
        });
    }
    if s.kernel_dimension() != 1 {
        return Err(Error::DegenerateGeometry {
            kernel_dim: s.kernel_dimension(),
        });
    }
    let mut solution = Matrix::zeros(s.base_dim());
    for (lambda, phi) in s.eigenvalues().iter().zip(s.eigenmatrices()) {
        if *lambda == 0.0 {
            continue;
        }
        let coeff = phi.hs_inner(b)? / *lambda;
        solution = &solution + &phi.scale_complex(coeff);
    }
    let applied = s.ctx().laplacian(&solution)?;
    let residual = (&applied - b).hs_norm() / b.hs_norm().max(1.0);
    let projected_source_norm = b.traceless_part().hs_norm();
    Ok(PoissonSolution {
        solution,
        residual,
        projected_source_norm,
    })
}

/// Round-trip harness: for seeded random Hermitian a, solve with source
/// L a and compare against the trace-free part of a. Returns the worst
/// relative error over all samples.
pub fn poisson_roundtrip_check(
    ctx: &GeometryContext,
    s: &Spectrum,
    seed: u64,
    samples: usize,
) -> Result<f64> {
    if samples < 1 {
        return Err(Error::InvalidParameter(
            "round-trip check needs at least one sample".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = random_hermitian(rng.next_u64(), ctx.dim(), 1.0)?;
        let b = ctx.laplacian(&a)?;
        let sol = solve_poisson(s, &b)?;
        let err = (&sol.solution - &a.traceless_part()).hs_norm() / a.hs_norm().max(1.0);
        worst = worst.max(err);
    }
    Ok(worst)
}
