//! The matrix geometry: generators, derivations, Laplacian.
//!
//! A geometry on M_n is fixed by two Hermitian generators x, y. The
//! associated unitaries U = exp(2*pi*i x/n), V = exp(2*pi*i y/n) generate
//! the algebra; for the default clock/shift pair U is the diagonal of n-th
//! roots of unity and V the cyclic shift, the standard finite model of the
//! two-torus.
//!
//! The derivations are the commutators d1 = [y, .] and d2 = -[x, .]. The
//! Laplacian is implemented in the double-commutator form
//!
//! ```text
//!     L a = [y, [y, a]] + [x, [x, a]]
//! ```
//!
//! which is the unique sign convention making L positive semidefinite with
//! `<a, L a> = |d1 a|^2 + |d2 a|^2` under the Hilbert-Schmidt inner product
//! (d_mu is anti-Hermitian on Hermitian elements, so d_mu* d_mu = d_mu^2 up
//! to that sign bookkeeping).

use num_complex::Complex64;

use crate::algebra::{hermitian_eig, random_hermitian, Matrix};
use crate::error::{Error, Result};

mod properties;
mod superop;

pub use properties::{
    check_properties, ids as property_ids, PropertyCheck, PropertyReport, KERNEL_CLASSIFICATION_TOL,
};
pub use superop::Superoperator;

/// How the generator pair is produced.
#[derive(Debug, Clone)]
pub enum GeneratorSpec {
    /// x = diag(0, 1, ..., n-1) and y its conjugate under the discrete
    /// Fourier transform, so that U is the clock matrix and V the shift.
    ClockShift,
    /// Caller-supplied Hermitian generators.
    Custom { x: Matrix, y: Matrix },
}

/// Immutable geometry data: dimension, generators, derived unitaries.
#[derive(Debug, Clone)]
pub struct GeometryContext {
    n: usize,
    x: Matrix,
    y: Matrix,
    u: Matrix,
    v: Matrix,
}

/// Unitary discrete Fourier transform, F[j][k] = exp(2 pi i jk/n)/sqrt(n).
pub fn dft_matrix(n: usize) -> Matrix {
    let scale = 1.0 / (n as f64).sqrt();
    Matrix::from_fn(n, |j, k| {
        let angle = 2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64;
        Complex64::from_polar(scale, angle)
    })
}

const GENERATOR_HERMITICITY_TOL: f64 = 1e-12;

impl GeometryContext {
    pub fn new(n: usize, spec: GeneratorSpec) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "geometry dimension must be >= 2, got {n}"
            )));
        }
        let (x, y) = match spec {
            GeneratorSpec::ClockShift => {
                let x = Matrix::diag(&(0..n).map(|k| k as f64).collect::<Vec<_>>());
                let f = dft_matrix(n);
                // F x F† is Hermitian up to roundoff; pin it exactly
                let y = f.matmul(&x).matmul(&f.adjoint()).hermitian_part();
                (x, y)
            }
            GeneratorSpec::Custom { x, y } => {
                for (name, w) in [("x", &x), ("y", &y)] {
                    if w.dim() != n {
                        return Err(Error::DimensionMismatch {
                            left: n,
                            right: w.dim(),
                        });
                    }
                    let violation = w.hermiticity_violation();
                    let tolerance = GENERATOR_HERMITICITY_TOL * w.hs_norm().max(1.0);
                    if violation > tolerance {
                        return Err(Error::InvalidParameter(format!(
                            "custom generator {name} is not Hermitian \
                             (asymmetry {violation:.3e} > {tolerance:.3e})"
                        )));
                    }
                }
                (x, y)
            }
        };
        let theta = 2.0 * std::f64::consts::PI / n as f64;
        let u = unitary_exp(&x, theta)?;
        let v = unitary_exp(&y, theta)?;
        Ok(Self { n, x, y, u, v })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    /// U = exp(2 pi i x / n).
    pub fn unitary_u(&self) -> &Matrix {
        &self.u
    }

    /// V = exp(2 pi i y / n).
    pub fn unitary_v(&self) -> &Matrix {
        &self.v
    }

    fn check_dim(&self, a: &Matrix) -> Result<()> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: a.dim(),
            });
        }
        Ok(())
    }

    /// First derivation, [y, a].
    pub fn delta1(&self, a: &Matrix) -> Result<Matrix> {
        self.check_dim(a)?;
        Ok(self.y.commutator(a))
    }

    /// Second derivation, -[x, a].
    pub fn delta2(&self, a: &Matrix) -> Result<Matrix> {
        self.check_dim(a)?;
        Ok(-&self.x.commutator(a))
    }

    /// Laplacian L a = [y, [y, a]] + [x, [x, a]].
    pub fn laplacian(&self, a: &Matrix) -> Result<Matrix> {
        self.check_dim(a)?;
        let dy = self.y.commutator(a);
        let dx = self.x.commutator(a);
        Ok(&self.y.commutator(&dy) + &self.x.commutator(&dx))
    }

    /// Power-weighted Dirichlet form tr(a^m L a) for Hermitian positive
    /// definite a and integer m >= 0. Always nonnegative, and zero exactly
    /// on scalar matrices.
    pub fn dirichlet_power_form(&self, a: &Matrix, m: u32) -> Result<f64> {
        self.check_dim(a)?;
        let d = hermitian_eig(a)?;
        if d.min_eigenvalue() <= 0.0 {
            return Err(Error::NotPositive {
                kind: "definite (Dirichlet form domain)",
                eigenvalue: d.min_eigenvalue(),
            });
        }
        let la = self.laplacian(a)?;
        let mut power = Matrix::identity(self.n);
        for _ in 0..m {
            power = power.matmul(a);
        }
        Ok(power.matmul(&la).trace().re)
    }

    /// Assemble the n^2 x n^2 matrix representation of the Laplacian.
    pub fn superoperator(&self) -> Superoperator {
        Superoperator::assemble(self)
    }

    /// Largest Laplacian eigenvalue, estimated by power iteration. Used for
    /// integrator step-size defaults and stability warnings; accurate to far
    /// better than those need.
    pub fn laplacian_norm_estimate(&self) -> f64 {
        let seed_matrix = random_hermitian(0x9D2C_5681, self.n, 1.0)
            .expect("internal generator parameters are valid");
        let mut b = seed_matrix.traceless_part();
        let norm = b.hs_norm();
        if norm == 0.0 {
            return 0.0;
        }
        b = b.scale(1.0 / norm);
        let mut rayleigh = 0.0f64;
        for _ in 0..1000 {
            let lb = self.laplacian(&b).expect("dimension is consistent");
            let next_rayleigh = b.hs_inner(&lb).expect("dimension is consistent").re;
            let lb_norm = lb.hs_norm();
            if lb_norm == 0.0 {
                return 0.0;
            }
            b = lb.scale(1.0 / lb_norm);
            if (next_rayleigh - rayleigh).abs() <= 1e-12 * next_rayleigh.abs().max(1.0) {
                return next_rayleigh;
            }
            rayleigh = next_rayleigh;
        }
        rayleigh
    }
}

/// exp(i theta w) for Hermitian w, through the spectral decomposition.
fn unitary_exp(w: &Matrix, theta: f64) -> Result<Matrix> {
    let d = hermitian_eig(w)?;
    let n = w.dim();
    let v = &d.eigenvectors;
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += v[(i, k)]
                    * Complex64::from_polar(1.0, theta * d.eigenvalues[k])
                    * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
