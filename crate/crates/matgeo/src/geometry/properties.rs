//! Executable checks for the structural identities of the geometry.
//!
//! Each check samples seeded random inputs, measures the worst normalized
//! violation of one identity or inequality, and records pass/fail against a
//! fixed tolerance. Equality claims get 1e-12 relative, inequalities 1e-10
//! of slack (double-precision accumulation over n^2 terms); the kernel
//! checks compare integer dimensions and get a nominal 1e-9.

use serde::{Deserialize, Serialize};

use crate::algebra::{hermitian_eig, random_hermitian, random_pd, Matrix, SplitMix64};
use crate::error::{Error, Result};

/// Check identifiers, stable across runs and usable from the CLI.
pub mod ids {
    /// Joint kernel of the two derivations is exactly the scalars.
    pub const DERIVATIONS_JOINT_KERNEL: &str = "derivations_joint_kernel";
    /// tr(a d b) = -tr(b d a), and d a is anti-Hermitian for Hermitian a.
    pub const DERIVATION_ANTISYMMETRY: &str = "derivation_antisymmetry";
    /// Sharp two-sided bounds lambda_1 |a - mean|^2 <= <a - mean, L(a - mean)> <= lambda_max |a - mean|^2.
    pub const NORM_EQUIVALENCE: &str = "norm_equivalence";
    /// Dirichlet form nonnegativity.
    pub const DIRICHLET_POSITIVITY: &str = "dirichlet_positivity";
    /// <a, L a> equals |d1 a|^2 + |d2 a|^2 (so zero form forces flat a).
    pub const DIRICHLET_ENERGY_IDENTITY: &str = "dirichlet_energy_identity";
    /// Laplacian kernel is one-dimensional and spanned by the identity.
    pub const LAPLACIAN_KERNEL_SCALAR: &str = "laplacian_kernel_scalar";
    /// tr(L a) = 0.
    pub const LAPLACIAN_TRACE_FREE: &str = "laplacian_trace_free";
    /// tr(a^m L a) >= 0 for positive definite a, m in 0..=5.
    pub const POWER_DIRICHLET_POSITIVITY: &str = "power_dirichlet_positivity";
    /// tr(a^m L a) = 0 when a is scalar.
    pub const POWER_DIRICHLET_SCALAR_FLAT: &str = "power_dirichlet_scalar_flat";
}

const EQUALITY_TOL: f64 = 1e-12;
const INEQUALITY_TOL: f64 = 1e-10;
const KERNEL_TOL: f64 = 1e-9;
const SCALAR_FLAT_TOL: f64 = 1e-11;

/// Relative eigenvalue threshold separating the kernel from the spectral gap.
pub const KERNEL_CLASSIFICATION_TOL: f64 = 1e-8;

/// Outcome of one property check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    pub samples: usize,
    pub worst_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PropertyCheck {
    fn new(property: &str, samples: usize, worst_violation: f64, tolerance: f64) -> Self {
        assert!(
            worst_violation.is_finite() && worst_violation >= 0.0,
            "violation must be a nonnegative finite real"
        );
        Self {
            property: property.to_string(),
            samples,
            worst_violation,
            tolerance,
            pass: worst_violation <= tolerance,
        }
    }
}

/// All property checks for one geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PropertyReport {
    checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn checks(&self) -> &[PropertyCheck] {
        &self.checks
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&PropertyCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn get(&self, property: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.property == property)
    }
}

struct SpectralSummary {
    kernel_dim: usize,
    lambda1: Option<f64>,
    lambda_max: f64,
}

fn spectral_summary(eigenvalues: &[f64]) -> SpectralSummary {
    let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cut = KERNEL_CLASSIFICATION_TOL * lambda_max;
    let kernel_dim = eigenvalues.iter().filter(|&&l| l < cut).count();
    let lambda1 = eigenvalues.iter().find(|&&l| l >= cut).copied();
    SpectralSummary {
        kernel_dim,
        lambda1,
        lambda_max,
    }
}

fn random_general(rng: &mut SplitMix64, n: usize, scale: f64) -> Matrix {
    let h = random_hermitian(rng.next_u64(), n, scale).expect("parameters are valid");
    let k = random_hermitian(rng.next_u64(), n, scale).expect("parameters are valid");
    &h + &k.scale_complex(num_complex::Complex64::new(0.0, 1.0))
}

/// Run every check on seeded random inputs and collect the report.
/// Failures are data, not errors; the only error paths are invalid
/// arguments and eigensolver breakdown.
pub fn check_properties(
    ctx: &crate::geometry::GeometryContext,
    seed: u64,
    samples: usize,
) -> Result<PropertyReport> {
    if samples < 1 {
        return Err(Error::InvalidParameter(
            "property checks need at least one sample".into(),
        ));
    }
    let n = ctx.dim();
    let mut rng = SplitMix64::new(seed);
    let sop = ctx.superoperator();
    let decomp = hermitian_eig(sop.matrix())?;
    let summary = spectral_summary(&decomp.eigenvalues);
    let gen_scale = ctx.x().hs_norm().max(ctx.y().hs_norm()).max(1.0);
    let mut checks = Vec::new();

    // Joint derivation kernel: only scalars annihilate both derivations.
    // The joint kernel equals ker L (the form identity below), so the
    // dimension count on the assembled matrix decides it; the converse
    // direction (scalars are annihilated) is evaluated directly.
    {
        let id = Matrix::identity(n);
        let scalar_resid = ctx.delta1(&id)?.hs_norm().max(ctx.delta2(&id)?.hs_norm());
        let excess = summary.kernel_dim.saturating_sub(1) as f64;
        checks.push(PropertyCheck::new(
            ids::DERIVATIONS_JOINT_KERNEL,
            1,
            excess.max(scalar_resid / (n as f64).sqrt()),
            KERNEL_TOL,
        ));
    }

    // Bilinear antisymmetry plus anti-Hermiticity on Hermitian inputs.
    {
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let a = random_general(&mut rng, n, 1.0);
            let b = random_general(&mut rng, n, 1.0);
            let scale = (a.hs_norm() * b.hs_norm() * gen_scale).max(1.0);
            for (da, db) in [
                (ctx.delta1(&a)?, ctx.delta1(&b)?),
                (ctx.delta2(&a)?, ctx.delta2(&b)?),
            ] {
                let lhs = a.matmul(&db).trace();
                let rhs = b.matmul(&da).trace();
                worst = worst.max((lhs + rhs).norm() / scale);
            }
            let h = a.hermitian_part();
            let h_scale = (h.hs_norm() * gen_scale).max(1.0);
            for d in [ctx.delta1(&h)?, ctx.delta2(&h)?] {
                worst = worst.max((&d.adjoint() + &d).hs_norm() / h_scale);
            }
        }
        checks.push(PropertyCheck::new(
            ids::DERIVATION_ANTISYMMETRY,
            samples,
            worst,
            EQUALITY_TOL,
        ));
    }

    // Norm equivalence with the sharp constants, Dirichlet positivity, and
    // the energy identity, all on the same sample stream.
    {
        let mut worst_equiv = 0.0f64;
        let mut worst_pos = 0.0f64;
        let mut worst_ident = 0.0f64;
        for _ in 0..samples {
            let a = random_hermitian(rng.next_u64(), n, 1.0)?;
            let dev = a.traceless_part();
            let s = dev.hs_norm().powi(2);
            let q = dev.hs_inner(&ctx.laplacian(&dev)?)?.re;
            let denom = (summary.lambda_max * s).max(1e-30);
            match summary.lambda1 {
                Some(l1) => {
                    worst_equiv = worst_equiv
                        .max((l1 * s - q).max(0.0) / denom)
                        .max((q - summary.lambda_max * s).max(0.0) / denom);
                }
                None => worst_equiv = 1.0, // no spectral gap at all
            }
            worst_pos = worst_pos.max((-q).max(0.0) / denom);

            let q_full = a.hs_inner(&ctx.laplacian(&a)?)?.re;
            let grad = ctx.delta1(&a)?.hs_norm().powi(2) + ctx.delta2(&a)?.hs_norm().powi(2);
            let ident_denom = (summary.lambda_max * a.hs_norm().powi(2)).max(1.0);
            worst_ident = worst_ident.max((q_full - grad).abs() / ident_denom);
        }
        checks.push(PropertyCheck::new(
            ids::NORM_EQUIVALENCE,
            samples,
            worst_equiv,
            INEQUALITY_TOL,
        ));
        checks.push(PropertyCheck::new(
            ids::DIRICHLET_POSITIVITY,
            samples,
            worst_pos,
            INEQUALITY_TOL,
        ));
        checks.push(PropertyCheck::new(
            ids::DIRICHLET_ENERGY_IDENTITY,
            samples,
            worst_ident,
            EQUALITY_TOL,
        ));
    }

    // Kernel of the Laplacian is the scalar line.
    {
        let iv = Matrix::identity(n).vec();
        let out = sop.apply_vec(&iv);
        let resid: f64 = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let excess = summary.kernel_dim.saturating_sub(1) as f64;
        let scaled_resid = resid / (summary.lambda_max * (n as f64).sqrt()).max(1e-30);
        checks.push(PropertyCheck::new(
            ids::LAPLACIAN_KERNEL_SCALAR,
            1,
            excess.max(scaled_resid),
            KERNEL_TOL,
        ));
    }

    // tr(L a) = 0 for arbitrary a.
    {
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let a = random_general(&mut rng, n, 1.0);
            let t = ctx.laplacian(&a)?.trace().norm();
            worst = worst.max(t / a.hs_norm().max(1.0));
        }
        checks.push(PropertyCheck::new(
            ids::LAPLACIAN_TRACE_FREE,
            samples,
            worst,
            EQUALITY_TOL,
        ));
    }

    // Power-weighted Dirichlet form: nonnegative on positive definite
    // input, vanishing on scalars, for m in 0..=5.
    {
        let mut worst_pos = 0.0f64;
        let mut worst_flat = 0.0f64;
        for _ in 0..samples {
            let a = random_pd(rng.next_u64(), n, 0.05, 10.0)?;
            let c = 0.5 + 2.5 * rng.next_f64();
            let scalar = Matrix::identity(n).scale(c);
            for m in 0..=5u32 {
                let scale = (a.hs_norm().powi(m as i32 + 1) * summary.lambda_max).max(1.0);
                let v = ctx.dirichlet_power_form(&a, m)?;
                worst_pos = worst_pos.max((-v).max(0.0) / scale);

                let flat_scale =
                    (scalar.hs_norm().powi(m as i32 + 1) * summary.lambda_max).max(1.0);
                let fv = ctx.dirichlet_power_form(&scalar, m)?;
                worst_flat = worst_flat.max(fv.abs() / flat_scale);
            }
        }
        checks.push(PropertyCheck::new(
            ids::POWER_DIRICHLET_POSITIVITY,
            samples,
            worst_pos,
            INEQUALITY_TOL,
        ));
        checks.push(PropertyCheck::new(
            ids::POWER_DIRICHLET_SCALAR_FLAT,
            samples,
            worst_flat,
            SCALAR_FLAT_TOL,
        ));
    }

    Ok(PropertyReport { checks })
}
