//! The six experiment commands.

use std::path::Path;

use serde::Serialize;

use matgeo::algebra::{io::matrix_to_json, SplitMix64};
use matgeo::flows::{find_method, stability_experiment, FlowParams};
use matgeo::geometry::check_properties;
use matgeo::poisson::solve_poisson;
use matgeo::spectral::Spectrum;

use crate::config::Experiment;
use crate::output::{atomic_write, stability_csv, trajectory_csv, warn, CliError};

const DEFAULT_RECORD_STRIDE: usize = 10;
const DEFAULT_STEP_FRACTION: f64 = 0.1;

pub fn cmd_props(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    let block = exp
        .config
        .props
        .as_ref()
        .ok_or_else(|| CliError::Usage("config has no 'props' block".into()))?;
    if block.samples == 0 {
        return Err(CliError::Usage("props.samples must be at least 1".into()));
    }
    let ctx = exp.geometry()?;
    let report = check_properties(&ctx, exp.config.seed, block.samples)?;
    let path = out_dir.join("property_report.json");
    atomic_write(
        &path,
        &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
    )?;
    for check in report.checks() {
        println!(
            "{} {} worst_violation={:e} tolerance={:e}",
            if check.pass { "pass" } else { "FAIL" },
            check.property,
            check.worst_violation,
            check.tolerance
        );
    }
    println!("wrote {}", path.display());
    if !report.all_pass() {
        let failing: Vec<&str> = report
            .failing()
            .iter()
            .map(|c| c.property.as_str())
            .collect();
        return Err(CliError::Math {
            kind: "property_failure",
            message: format!("properties failed: {}", failing.join(", ")),
        });
    }
    Ok(())
}

pub fn cmd_spectrum(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    let block = exp.config.spectrum.clone().unwrap_or_default();
    let ctx = exp.geometry()?;
    let s = Spectrum::compute(&ctx)?;
    if s.kernel_dimension() != 1 {
        warn(
            "degenerate_geometry",
            &format!(
                "laplacian kernel has dimension {}, expected 1",
                s.kernel_dimension()
            ),
        );
    }
    let lambda1 = s
        .spectral_gap()
        .map(|v| v.to_string())
        .unwrap_or_else(|_| "nan".into());
    let mut csv = format!(
        "# n={} generators={} lambda1={}\nindex,eigenvalue\n",
        exp.config.n,
        exp.config.generators.label(),
        lambda1
    );
    for (i, l) in s.eigenvalues().iter().enumerate() {
        csv.push_str(&format!("{i},{l}\n"));
    }
    let path = out_dir.join("spectrum.csv");
    atomic_write(&path, &csv)?;
    println!("wrote {}", path.display());
    if block.dump_eigenmatrices {
        for (i, phi) in s.eigenmatrices().iter().enumerate() {
            let p = out_dir.join(format!("eigenmatrix_{i:04}.json"));
            atomic_write(&p, &format!("{}\n", matrix_to_json(phi)))?;
        }
        println!("wrote {} eigenmatrix files", s.dim());
    }
    Ok(())
}

pub fn cmd_poisson(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    let block = exp
        .config
        .poisson
        .as_ref()
        .ok_or_else(|| CliError::Usage("config has no 'poisson' block".into()))?;
    let b = exp.load_matrix(&block.b)?;
    let ctx = exp.geometry()?;
    let s = Spectrum::compute(&ctx)?;
    let solution = solve_poisson(&s, &b)?;
    let path = out_dir.join("poisson_solution.json");
    atomic_write(
        &path,
        &format!("{}\n", serde_json::to_string_pretty(&solution).unwrap()),
    )?;
    println!(
        "wrote {} (residual {:e})",
        path.display(),
        solution.residual
    );
    Ok(())
}

fn run_flow(exp: &Experiment, out_dir: &Path, method_name: &str) -> Result<(), CliError> {
    let block = exp
        .config
        .flow
        .as_ref()
        .ok_or_else(|| CliError::Usage("config has no 'flow' block".into()))?;
    let ctx = exp.geometry()?;
    let mut rng = SplitMix64::new(exp.config.seed);
    let u0 = exp.resolve_source(&block.u0, &mut rng)?;

    let step = match block.step {
        Some(s) => s,
        None => {
            let lambda_max = ctx.laplacian_norm_estimate();
            if lambda_max > 0.0 {
                DEFAULT_STEP_FRACTION / lambda_max
            } else {
                return Err(CliError::Usage(
                    "cannot derive a default step for a flat geometry; set flow.step".into(),
                ));
            }
        }
    };
    let params = FlowParams {
        t_max: block.t_max,
        step,
        record_stride: block.record_stride.unwrap_or(DEFAULT_RECORD_STRIDE),
    };
    let method = find_method(method_name)
        .ok_or_else(|| CliError::Usage(format!("unknown flow method '{method_name}'")))?;
    let traj = method.run(&ctx, &u0, &params)?;
    if traj.stability_warning {
        warn(
            "step_size",
            &format!("step {step} exceeds the RK4 stability bound for this geometry"),
        );
    }
    let path = out_dir.join("trajectory.csv");
    atomic_write(&path, &trajectory_csv(&traj))?;
    println!(
        "wrote {} ({} states, method {})",
        path.display(),
        traj.len(),
        method.name()
    );

    if let Some(dump_times) = &block.dump_times {
        for &want in dump_times {
            // dump the recorded state closest to the requested time
            let (idx, _) = traj
                .times
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    (*a - want)
                        .abs()
                        .partial_cmp(&(*b - want).abs())
                        .expect("times are finite")
                })
                .expect("trajectory is never empty");
            let p = out_dir.join(format!("state_{idx:04}.json"));
            atomic_write(&p, &format!("{}\n", matrix_to_json(&traj.states[idx])))?;
            println!("wrote {} (t = {})", p.display(), traj.times[idx]);
        }
    }
    Ok(())
}

pub fn cmd_heat(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    let method = exp
        .config
        .flow
        .as_ref()
        .and_then(|f| f.method.clone())
        .unwrap_or_else(|| "exact".into());
    if method != "exact" && method != "rk4" {
        return Err(CliError::Usage(format!(
            "heat flow method must be 'exact' or 'rk4', got '{method}'"
        )));
    }
    run_flow(exp, out_dir, &method)
}

// The subcommand is the method selection here; flow.method only steers the
// heat command.
pub fn cmd_ricci(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    run_flow(exp, out_dir, "log-laplacian")
}

#[derive(Serialize)]
struct StabilitySummary {
    fannes_dim: usize,
    fannes_bound: f64,
    fannes_bound_base_dim: f64,
    initial_eig_l1_gap: f64,
    initial_trace_distance: f64,
    trace_matched: bool,
    fannes_applicable: bool,
    contraction_ok: bool,
    trace_distance_monotone: bool,
    fannes_ok: Option<bool>,
}

pub fn cmd_stability(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    let block = exp
        .config
        .stability
        .as_ref()
        .ok_or_else(|| CliError::Usage("config has no 'stability' block".into()))?;
    let times_ok = !block.times.is_empty()
        && block.times.iter().all(|t| t.is_finite() && *t >= 0.0)
        && block.times.windows(2).all(|w| w[0] < w[1]);
    if !times_ok {
        return Err(CliError::Usage(
            "stability.times must be a nonempty, strictly ascending list of nonnegative reals"
                .into(),
        ));
    }
    let ctx = exp.geometry()?;
    let s = Spectrum::compute(&ctx)?;
    let mut rng = SplitMix64::new(exp.config.seed);
    let u0 = exp.resolve_source(&block.u0, &mut rng)?;
    let v0 = exp.resolve_source(&block.v0, &mut rng)?;
    let fannes_dim = block.fannes_dim.unwrap_or(exp.config.n * exp.config.n);
    let report = stability_experiment(&s, &u0, &v0, &block.times, fannes_dim)?;

    if !report.trace_matched {
        warn(
            "trace_mismatch",
            "initial traces differ; contraction is checked against the mean-adjusted envelope",
        );
    }
    if !report.fannes_applicable {
        warn(
            "fannes_not_applicable",
            "entropy bound preconditions (unit traces, initial gap <= 1/e) not met; bounds reported anyway",
        );
    }

    let csv_path = out_dir.join("stability.csv");
    atomic_write(&csv_path, &stability_csv(&report))?;
    let summary = StabilitySummary {
        fannes_dim: report.fannes_dim,
        fannes_bound: report.fannes_bound,
        fannes_bound_base_dim: report.fannes_bound_base_dim,
        initial_eig_l1_gap: report.initial_eig_l1_gap,
        initial_trace_distance: report.initial_trace_distance,
        trace_matched: report.trace_matched,
        fannes_applicable: report.fannes_applicable,
        contraction_ok: report.contraction_ok,
        trace_distance_monotone: report.trace_distance_monotone,
        fannes_ok: report.fannes_ok,
    };
    let summary_path = out_dir.join("stability_summary.json");
    atomic_write(
        &summary_path,
        &format!("{}\n", serde_json::to_string_pretty(&summary).unwrap()),
    )?;
    println!("wrote {}", csv_path.display());
    println!("wrote {}", summary_path.display());

    let mut failed = Vec::new();
    if !report.contraction_ok {
        failed.push("distance contraction");
    }
    if !report.trace_distance_monotone {
        failed.push("trace-distance monotonicity");
    }
    if report.fannes_ok == Some(false) {
        failed.push("entropy-difference bound");
    }
    if !failed.is_empty() {
        return Err(CliError::Math {
            kind: "stability_failure",
            message: format!("stability assertions failed: {}", failed.join(", ")),
        });
    }
    Ok(())
}
