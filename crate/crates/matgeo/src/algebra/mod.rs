//! Dense complex matrices with the Hilbert-Schmidt geometry.
//!
//! Everything in this crate works on square n x n complex matrices viewed as
//! elements of the algebra M_n equipped with the inner product
//! `<a, b> = tr(a† b)`. This module provides the storage type, the basic
//! arithmetic, and the trace/inner-product machinery; eigendecompositions,
//! Hermitian matrix functions and seeded random generation live in the
//! submodules.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub mod eig;
pub mod functions;
pub mod io;
pub mod random;

pub use eig::{hermitian_eig, HermitianDecomposition};
pub use functions::{
    eigenvalue_l1_gap, eta, matrix_function, trace_distance, von_neumann_entropy, MatrixFunction,
};
pub use random::{random_hermitian, random_pd, SplitMix64};

/// A square complex matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    /// Zero matrix of dimension n.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Identity matrix of dimension n.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag_complex(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Elementary matrix E_ij: 1 at (i, j), 0 elsewhere.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from row-major complex data. Fails on non-square data or
    /// non-finite entries.
    pub fn from_data(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: f64) -> Matrix {
        self.scale_complex(Complex64::new(c, 0.0))
    }

    pub fn scale_complex(&self, c: Complex64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Matrix product self * other.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Commutator [self, other] = self*other - other*self.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert-Schmidt inner product tr(self† other), conjugate-linear in self.
    pub fn hs_inner(&self, other: &Matrix) -> Result<Complex64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// The scalar part (tr(a)/n) I.
    pub fn mean_part(&self) -> Matrix {
        let mean = self.trace() / self.n as f64;
        Matrix::identity(self.n).scale_complex(mean)
    }

    /// Deviation from the scalar part, a - (tr(a)/n) I.
    pub fn traceless_part(&self) -> Matrix {
        self - &self.mean_part()
    }

    /// Norm of self - self†, the deviation from Hermitian symmetry.
    pub fn hermiticity_violation(&self) -> f64 {
        let mut acc = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self[(i, j)] - self[(j, i)].conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Hermitian within `tol * max(1, |self|)`.
    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        self.hermiticity_violation() <= tol * self.hs_norm().max(1.0)
    }

    /// The Hermitian part (a + a†)/2.
    pub fn hermitian_part(&self) -> Matrix {
        (self + &self.adjoint()).scale(0.5)
    }

    /// Deviation of self† self from the identity.
    pub fn unitarity_violation(&self) -> f64 {
        (&self.adjoint().matmul(self) - &Matrix::identity(self.n)).hs_norm()
    }

    /// Column-stacked vectorization: vec(a)[j*n + i] = a[(i, j)].
    pub fn vec(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut v = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Inverse of [`Matrix::vec`].
    pub fn unvec(n: usize, v: &[Complex64]) -> Matrix {
        assert_eq!(v.len(), n * n, "unvec length mismatch");
        Matrix::from_fn(n, |i, j| v[j * n + i])
    }

    /// Kronecker product self ⊗ other.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (na, nb) = (self.n, other.n);
        let mut out = Matrix::zeros(na * nb);
        for i in 0..na {
            for j in 0..na {
                let aij = self[(i, j)];
                if aij == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..nb {
                    for l in 0..nb {
                        out[(i * nb + k, j * nb + l)] = aij * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "add dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "sub dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        self.matmul(other)
    }
}

/// Pauli x, [[0, 1], [1, 0]].
pub fn pauli_x() -> Matrix {
    let mut m = Matrix::zeros(2);
    m[(0, 1)] = Complex64::new(1.0, 0.0);
    m[(1, 0)] = Complex64::new(1.0, 0.0);
    m
}

/// Pauli y, [[0, -i], [i, 0]].
pub fn pauli_y() -> Matrix {
    let mut m = Matrix::zeros(2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

/// Pauli z, diag(1, -1).
pub fn pauli_z() -> Matrix {
    Matrix::diag(&[1.0, -1.0])
}
