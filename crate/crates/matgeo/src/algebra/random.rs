//! Seeded random matrix generation.
//!
//! Test inputs and experiment initial states must be reproducible from a
//! single integer seed, so the generator is a small self-contained
//! splitmix64 rather than an external RNG: identical seeds give identical
//! matrices, bit for bit, run after run.

use num_complex::Complex64;

use super::{hermitian_eig, Matrix};
use crate::error::{Error, Result};

/// splitmix64 with Box-Muller normals layered on top.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    cached_normal: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed,
            cached_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.cached_normal.take() {
            return z;
        }
        let u1 = 1.0 - self.next_f64(); // (0, 1], keeps ln finite
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.cached_normal = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// Random Hermitian matrix with Gaussian entries; exactly Hermitian by
/// construction, deterministic in the seed.
pub fn random_hermitian(seed: u64, n: usize, scale: f64) -> Result<Matrix> {
    if n < 1 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "scale must be positive and finite, got {scale}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut m = Matrix::zeros(n);
    let isq2 = 1.0 / 2.0_f64.sqrt();
    for i in 0..n {
        m[(i, i)] = Complex64::new(scale * rng.next_normal(), 0.0);
        for j in (i + 1)..n {
            let z = Complex64::new(
                scale * isq2 * rng.next_normal(),
                scale * isq2 * rng.next_normal(),
            );
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Ok(m)
}

/// Random Hermitian positive definite matrix with smallest eigenvalue at
/// least `min_eig`.
///
/// Construction: exponentiate a random Hermitian h rescaled so its spectral
/// radius is at most ln(scale) -- eigenvalues land in [1/scale, scale] by
/// construction, not just with high probability -- then shift by a multiple
/// of the identity if the floor is still below `min_eig`.
pub fn random_pd(seed: u64, n: usize, min_eig: f64, scale: f64) -> Result<Matrix> {
    if n < 1 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    if !min_eig.is_finite() || min_eig <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "min_eig must be positive and finite, got {min_eig}"
        )));
    }
    if !scale.is_finite() || scale < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "scale must be >= 1 and finite, got {scale}"
        )));
    }
    let h = random_hermitian(seed, n, 1.0)?;
    let d = hermitian_eig(&h)?;
    let radius = d.min_eigenvalue().abs().max(d.max_eigenvalue().abs());
    let cap = scale.ln();
    let factor = if radius > cap && radius > 0.0 {
        cap / radius
    } else {
        1.0
    };
    let u = d.apply_scalar_fn(|l| (factor * l).exp());
    let lambda_min = (factor * d.min_eigenvalue()).exp();
    if lambda_min < min_eig {
        Ok(&u + &Matrix::identity(n).scale(min_eig - lambda_min))
    } else {
        Ok(u)
    }
}
