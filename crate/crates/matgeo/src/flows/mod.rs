//! Time evolution: heat flow, the log-Laplacian comparison flow, and the
//! stability experiment.
//!
//! The heat equation u' = -L u has the exact solution operator given by the
//! spectral decomposition, so the reference integrator just evaluates the
//! semigroup at the requested times. The RK4 integrators exist for flows
//! with no closed form -- the nonlinear c' = -L log c -- and as a
//! convergence-order cross-check against the exact semigroup.
//!
//! Every trajectory carries per-time diagnostics: trace (conserved, since
//! tr(L a) = 0), minimum eigenvalue, log-determinant and entropy (absent
//! outside their domains), and distance to the conserved mean.

use num_complex::Complex64;

use crate::algebra::{
    eigenvalue_l1_gap, hermitian_eig, trace_distance, von_neumann_entropy, Matrix,
};
use crate::error::{Error, Result};
use crate::geometry::GeometryContext;
use crate::spectral::Spectrum;

mod method;

pub use method::{find_method, flow_methods, FlowMethod, FlowParams};

/// Scalar observables of one state along a flow.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub trace: Complex64,
    pub entropy: Option<f64>,
    pub min_eigenvalue: f64,
    pub log_det: Option<f64>,
    pub dist_to_mean: f64,
}

/// A recorded flow: times, states, their diagnostics, and a flag raised
/// when the step size exceeded the RK4 stability bound.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<Matrix>,
    pub diagnostics: Vec<Diagnostics>,
    pub stability_warning: bool,
}

impl FlowTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &Matrix {
        self.states.last().expect("trajectory is never empty")
    }
}

/// Diagnostics of a single Hermitian state relative to the conserved mean
/// of the trajectory's initial condition.
///
/// Entropy is absent when the state is not positive semidefinite, the
/// log-determinant when any eigenvalue is nonpositive; absence encodes the
/// domain failure rather than erroring out of a running flow.
pub fn flow_diagnostics(u: &Matrix, u0_mean: &Matrix) -> Result<Diagnostics> {
    let d = hermitian_eig(u)?;
    let min_eigenvalue = d.min_eigenvalue();
    let psd_tol = 1e-12 * u.hs_norm();
    let entropy = if min_eigenvalue >= -psd_tol {
        Some(
            d.eigenvalues
                .iter()
                .filter(|&&l| l > 0.0)
                .map(|&l| -l * l.ln())
                .sum(),
        )
    } else {
        None
    };
    let log_det = if min_eigenvalue > 0.0 {
        Some(d.eigenvalues.iter().map(|&l| l.ln()).sum())
    } else {
        None
    };
    Ok(Diagnostics {
        trace: u.trace(),
        entropy,
        min_eigenvalue,
        log_det,
        dist_to_mean: (u - u0_mean).hs_norm(),
    })
}

fn validate_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidParameter("empty time list".into()));
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::Domain("times must be finite and nonnegative".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("times must be strictly ascending".into()));
    }
    Ok(())
}

/// Heat flow by the exact semigroup, sampled at the given times.
pub fn heat_flow_exact(s: &Spectrum, u0: &Matrix, times: &[f64]) -> Result<FlowTrajectory> {
    validate_times(times)?;
    let u0_mean = u0.mean_part();
    let mut states = Vec::with_capacity(times.len());
    let mut diagnostics = Vec::with_capacity(times.len());
    for &t in times {
        let u = s.semigroup_apply(t, u0)?;
        diagnostics.push(flow_diagnostics(&u, &u0_mean)?);
        states.push(u);
    }
    Ok(FlowTrajectory {
        times: times.to_vec(),
        states,
        diagnostics,
        stability_warning: false,
    })
}

/// Real-axis stability bound of classical RK4: h * lambda <= 2.785.
pub const RK4_STABILITY_BOUND: f64 = 2.785;

struct Rk4Output {
    times: Vec<f64>,
    states: Vec<Matrix>,
}

/// Classical fourth-order Runge-Kutta on u' = f(u), recording t = 0, every
/// `record_stride`-th step, and the final step.
fn rk4_integrate(
    u0: &Matrix,
    step: f64,
    steps: usize,
    record_stride: usize,
    mut f: impl FnMut(usize, &Matrix) -> Result<Matrix>,
) -> Result<Rk4Output> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "step must be positive and finite, got {step}"
        )));
    }
    if steps == 0 || record_stride == 0 {
        return Err(Error::InvalidParameter(
            "steps and record_stride must be at least 1".into(),
        ));
    }
    let mut u = u0.clone();
    let mut times = vec![0.0];
    let mut states = vec![u.clone()];
    for k in 1..=steps {
        let k1 = f(k, &u)?;
        let k2 = f(k, &(&u + &k1.scale(step / 2.0)))?;
        let k3 = f(k, &(&u + &k2.scale(step / 2.0)))?;
        let k4 = f(k, &(&u + &k3.scale(step)))?;
        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(2.0);
        u = &u + &incr.scale(step / 6.0);
        if !u.is_finite() {
            return Err(Error::Integration {
                step: k,
                reason: "state became non-finite (overflow or NaN)".into(),
            });
        }
        if k % record_stride == 0 || k == steps {
            times.push(k as f64 * step);
            states.push(u.clone());
        }
    }
    Ok(Rk4Output { times, states })
}

fn attach_diagnostics(out: Rk4Output, u0: &Matrix, warning: bool) -> Result<FlowTrajectory> {
    let u0_mean = u0.mean_part();
    let diagnostics = out
        .states
        .iter()
        .map(|u| flow_diagnostics(u, &u0_mean))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlowTrajectory {
        times: out.times,
        states: out.states,
        diagnostics,
        stability_warning: warning,
    })
}

/// RK4 integration of the heat equation u' = -L u.
///
/// Steps beyond the RK4 stability bound only raise the trajectory's warning
/// flag; the integration itself proceeds (and will report non-finite states
/// if it blows up).
pub fn heat_flow_rk4(
    ctx: &GeometryContext,
    u0: &Matrix,
    step: f64,
    steps: usize,
    record_stride: usize,
) -> Result<FlowTrajectory> {
    let lambda_max = ctx.laplacian_norm_estimate();
    let warning = lambda_max > 0.0 && step > RK4_STABILITY_BOUND / lambda_max;
    let out = rk4_integrate(u0, step, steps, record_stride, |_, u| {
        Ok(-&ctx.laplacian(u)?)
    })?;
    attach_diagnostics(out, u0, warning)
}

/// RK4 integration of the log-Laplacian flow c' = -L log c.
///
/// The state must stay positive definite for log c to exist; losing
/// positivity at any internal stage aborts with the failing step index.
pub fn log_laplacian_flow(
    ctx: &GeometryContext,
    c0: &Matrix,
    step: f64,
    steps: usize,
    record_stride: usize,
) -> Result<FlowTrajectory> {
    let d0 = hermitian_eig(c0)?;
    if d0.min_eigenvalue() <= 0.0 {
        return Err(Error::NotPositive {
            kind: "definite (flow initial state)",
            eigenvalue: d0.min_eigenvalue(),
        });
    }
    let lambda_max = ctx.laplacian_norm_estimate();
    let warning = lambda_max > 0.0 && step > RK4_STABILITY_BOUND / lambda_max;
    let out = rk4_integrate(c0, step, steps, record_stride, |k, c| {
        let d = hermitian_eig(c)?;
        if d.min_eigenvalue() <= 0.0 {
            return Err(Error::PositivityLoss {
                step: k,
                eigenvalue: d.min_eigenvalue(),
            });
        }
        let log_c = d.apply_scalar_fn(f64::ln);
        Ok(-&ctx.laplacian(&log_c)?)
    })?;
    attach_diagnostics(out, c0, warning)
}

/// Smallest entropy increment between consecutive recorded states.
///
/// Nonnegative (within integration slack) along heat-type flows; a reversed
/// or otherwise entropy-decreasing trajectory comes back clearly negative.
/// Errors if any recorded state has no entropy (not positive semidefinite).
pub fn entropy_monotonicity_check(traj: &FlowTrajectory) -> Result<f64> {
    let entropies: Vec<f64> = traj
        .diagnostics
        .iter()
        .map(|d| {
            d.entropy.ok_or(Error::NotPositive {
                kind: "semidefinite (entropy along trajectory)",
                eigenvalue: d.min_eigenvalue,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if entropies.len() < 2 {
        return Ok(0.0);
    }
    Ok(entropies
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min))
}

/// One row of the stability experiment.
#[derive(Debug, Clone)]
pub struct StabilityRow {
    pub t: f64,
    pub hs_distance: f64,
    pub trace_distance: f64,
    pub eig_l1_gap: f64,
    pub entropy_u: f64,
    pub entropy_v: f64,
    pub entropy_gap: f64,
    /// Entropy-difference bound from the t = 0 data (constant in t).
    pub fannes_bound: f64,
    /// |u0 - v0| e^{-lambda_1 t}.
    pub contraction_envelope: f64,
}

/// Two heat flows compared: distances, entropies, and the bounds they are
/// expected to satisfy.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub rows: Vec<StabilityRow>,
    /// Dimension parameter used in the entropy bound.
    pub fannes_dim: usize,
    /// The bound evaluated with `fannes_dim`.
    pub fannes_bound: f64,
    /// Same bound evaluated with d = n, for comparison.
    pub fannes_bound_base_dim: f64,
    pub initial_eig_l1_gap: f64,
    pub initial_trace_distance: f64,
    /// tr(u0) = tr(v0), so the difference decays at the full spectral gap.
    pub trace_matched: bool,
    /// Unit traces and initial eigenvalue gap <= 1/e.
    pub fannes_applicable: bool,
    /// Distance below the decay envelope at every recorded time (the
    /// mean-adjusted envelope when traces differ).
    pub contraction_ok: bool,
    pub trace_distance_monotone: bool,
    /// None when the preconditions fail; the bound values are still filled.
    pub fannes_ok: Option<bool>,
}

fn raw_eta(s: f64) -> f64 {
    if s > 0.0 {
        -s * s.ln()
    } else {
        0.0
    }
}

/// Evolve two positive definite initial states by the exact semigroup and
/// monitor distance contraction, trace-distance monotonicity, and the
/// entropy-difference bound.
pub fn stability_experiment(
    s: &Spectrum,
    u0: &Matrix,
    v0: &Matrix,
    times: &[f64],
    fannes_dim: usize,
) -> Result<StabilityReport> {
    validate_times(times)?;
    if u0.dim() != v0.dim() {
        return Err(Error::DimensionMismatch {
            left: u0.dim(),
            right: v0.dim(),
        });
    }
    for w in [u0, v0] {
        let d = hermitian_eig(w)?;
        if d.min_eigenvalue() <= 0.0 {
            return Err(Error::NotPositive {
                kind: "definite (stability experiment input)",
                eigenvalue: d.min_eigenvalue(),
            });
        }
    }
    let n = s.base_dim();
    let gap = s.spectral_gap()?;

    let diff0 = u0 - v0;
    let hs0 = diff0.hs_norm();
    let initial_trace_distance = trace_distance(u0, v0)?;
    let initial_eig_l1_gap = eigenvalue_l1_gap(u0, v0)?;

    let trace_matched = (u0.trace() - v0.trace()).norm() <= 1e-9 * u0.trace().norm().max(1.0);
    let unit_traces = (u0.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-9
        && (v0.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-9;
    let fannes_applicable = unit_traces && initial_eig_l1_gap <= 1.0 / std::f64::consts::E;

    let fannes_bound = initial_eig_l1_gap * (fannes_dim as f64).ln() + raw_eta(initial_eig_l1_gap);
    let fannes_bound_base_dim = initial_eig_l1_gap * (n as f64).ln() + raw_eta(initial_eig_l1_gap);

    // Mean mismatch survives the flow; only the trace-free part contracts.
    let mean_norm = diff0.mean_part().hs_norm();
    let dev_norm = diff0.traceless_part().hs_norm();

    let mut rows = Vec::with_capacity(times.len());
    let mut contraction_ok = true;
    let mut trace_distance_monotone = true;
    let mut fannes_violated = false;
    let mut prev_trace_distance = f64::INFINITY;

    for &t in times {
        let u = s.semigroup_apply(t, u0)?;
        let v = s.semigroup_apply(t, v0)?;
        let hs_distance = (&u - &v).hs_norm();
        let td = trace_distance(&u, &v)?;
        let gap_l1 = eigenvalue_l1_gap(&u, &v)?;
        let entropy_u = von_neumann_entropy(&u)?;
        let entropy_v = von_neumann_entropy(&v)?;
        let entropy_gap = (entropy_u - entropy_v).abs();

        let contraction_envelope = hs0 * (-gap * t).exp();
        let effective_envelope = if trace_matched {
            contraction_envelope
        } else {
            (mean_norm.powi(2) + (dev_norm * (-gap * t).exp()).powi(2)).sqrt()
        };
        // the additive term only guards the roundoff floor near zero
        if hs_distance > effective_envelope * (1.0 + 1e-8) + 1e-14 * (u0.hs_norm() + v0.hs_norm()) {
            contraction_ok = false;
        }
        if td > prev_trace_distance + 1e-9 * initial_trace_distance.max(1.0) {
            trace_distance_monotone = false;
        }
        prev_trace_distance = td;
        if fannes_applicable && entropy_gap > fannes_bound + 1e-12 * fannes_bound.max(1.0) {
            fannes_violated = true;
        }

        rows.push(StabilityRow {
            t,
            hs_distance,
            trace_distance: td,
            eig_l1_gap: gap_l1,
            entropy_u,
            entropy_v,
            entropy_gap,
            fannes_bound,
            contraction_envelope,
        });
    }

    Ok(StabilityReport {
        rows,
        fannes_dim,
        fannes_bound,
        fannes_bound_base_dim,
        initial_eig_l1_gap,
        initial_trace_distance,
        trace_matched,
        fannes_applicable,
        contraction_ok,
        trace_distance_monotone,
        fannes_ok: if fannes_applicable {
            Some(!fannes_violated)
        } else {
            None
        },
    })
}
