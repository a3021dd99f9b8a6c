//! Flow integrators behind a common interface, selectable by name.
//!
//! Every integrator maps an initial state and a (t_max, step, stride)
//! schedule to a [`FlowTrajectory`] over the same recording grid, so the
//! exact semigroup, the RK4 heat integrator, and the log-Laplacian flow are
//! interchangeable from configuration: look the method up by name, run it.

use super::{heat_flow_exact, heat_flow_rk4, log_laplacian_flow, FlowTrajectory};
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::geometry::GeometryContext;
use crate::spectral::Spectrum;

/// Integration schedule shared by all methods.
#[derive(Debug, Clone, Copy)]
pub struct FlowParams {
    pub t_max: f64,
    pub step: f64,
    pub record_stride: usize,
}

impl FlowParams {
    pub fn validate(&self) -> Result<()> {
        if !self.t_max.is_finite() || self.t_max <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "t_max must be positive and finite, got {}",
                self.t_max
            )));
        }
        if !self.step.is_finite() || self.step <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "step must be positive and finite, got {}",
                self.step
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidParameter(
                "record_stride must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Number of RK4 steps covering [0, t_max].
    pub fn steps(&self) -> usize {
        ((self.t_max / self.step).ceil() as usize).max(1)
    }

    /// The recording grid: 0, every stride-th step, and the final step.
    pub fn recorded_times(&self) -> Vec<f64> {
        let steps = self.steps();
        let mut times = vec![0.0];
        for k in 1..=steps {
            if k % self.record_stride == 0 || k == steps {
                times.push(k as f64 * self.step);
            }
        }
        times
    }
}

/// A named time integrator.
pub trait FlowMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(
        &self,
        ctx: &GeometryContext,
        u0: &Matrix,
        params: &FlowParams,
    ) -> Result<FlowTrajectory>;
}

/// Heat flow through the spectral decomposition (exact solution operator).
struct ExactHeat;

impl FlowMethod for ExactHeat {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn description(&self) -> &'static str {
        "heat flow via the exact semigroup (spectral decomposition)"
    }

    fn run(
        &self,
        ctx: &GeometryContext,
        u0: &Matrix,
        params: &FlowParams,
    ) -> Result<FlowTrajectory> {
        params.validate()?;
        let s = Spectrum::compute(ctx)?;
        heat_flow_exact(&s, u0, &params.recorded_times())
    }
}

/// Heat flow by classical RK4.
struct Rk4Heat;

impl FlowMethod for Rk4Heat {
    fn name(&self) -> &'static str {
        "rk4"
    }

    fn description(&self) -> &'static str {
        "heat flow by classical 4th-order Runge-Kutta"
    }

    fn run(
        &self,
        ctx: &GeometryContext,
        u0: &Matrix,
        params: &FlowParams,
    ) -> Result<FlowTrajectory> {
        params.validate()?;
        heat_flow_rk4(ctx, u0, params.step, params.steps(), params.record_stride)
    }
}

/// The nonlinear comparison flow c' = -L log c.
struct LogLaplacian;

impl FlowMethod for LogLaplacian {
    fn name(&self) -> &'static str {
        "log-laplacian"
    }

    fn description(&self) -> &'static str {
        "log-Laplacian flow c' = -L log c by RK4 (positive definite states)"
    }

    fn run(
        &self,
        ctx: &GeometryContext,
        u0: &Matrix,
        params: &FlowParams,
    ) -> Result<FlowTrajectory> {
        params.validate()?;
        log_laplacian_flow(ctx, u0, params.step, params.steps(), params.record_stride)
    }
}

/// All registered integrators.
pub fn flow_methods() -> Vec<Box<dyn FlowMethod>> {
    vec![
        Box::new(ExactHeat),
        Box::new(Rk4Heat),
        Box::new(LogLaplacian),
    ]
}

/// Look an integrator up by its registered name.
pub fn find_method(name: &str) -> Option<Box<dyn FlowMethod>> {
    flow_methods().into_iter().find(|m| m.name() == name)
}
