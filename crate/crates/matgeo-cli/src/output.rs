//! Error-to-exit-code mapping and artifact emission.
//!
//! Exit codes are a contract: 0 means every asserted property held, 1 means
//! a mathematical statement failed or a domain error occurred, 2 means the
//! invocation itself was broken (config, I/O). Files are written through a
//! temp-and-rename so readers never observe a partial artifact.

use std::fmt;
use std::fs;
use std::path::Path;

use matgeo::flows::{FlowTrajectory, StabilityReport};

#[derive(Debug)]
pub enum CliError {
    /// Broken invocation or config: exit 2.
    Usage(String),
    /// Filesystem problems: exit 2.
    Io(String),
    /// Mathematical or domain failure: exit 1.
    Math { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Math { .. } => 1,
        }
    }

    pub fn kind(&self) -> &str {
        match self {
            CliError::Usage(_) => "config",
            CliError::Io(_) => "io",
            CliError::Math { kind, .. } => kind,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
            CliError::Math { message, .. } => message,
        }
    }

    /// Machine-readable error object for the error stream.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": { "kind": self.kind(), "message": self.message() }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl From<matgeo::Error> for CliError {
    fn from(e: matgeo::Error) -> Self {
        use matgeo::Error::*;
        match &e {
            InvalidParameter(_) | DimensionMismatch { .. } | NotHermitian { .. } => {
                CliError::Usage(e.to_string())
            }
            NotSolvable { .. } => CliError::Math {
                kind: "not_solvable",
                message: e.to_string(),
            },
            DegenerateGeometry { .. } => CliError::Math {
                kind: "degenerate_geometry",
                message: e.to_string(),
            },
            NotPositive { .. } => CliError::Math {
                kind: "not_positive",
                message: e.to_string(),
            },
            Integration { .. } | PositivityLoss { .. } => CliError::Math {
                kind: "integration",
                message: e.to_string(),
            },
            EigenNonConvergence { .. } | Domain(_) => CliError::Math {
                kind: "domain",
                message: e.to_string(),
            },
        }
    }
}

/// Emit a warning object on the error stream without failing the run.
pub fn warn(kind: &str, message: &str) {
    eprintln!(
        "{}",
        serde_json::json!({ "warning": { "kind": kind, "message": message } })
    );
}

/// Write atomically: temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, content: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    fs::write(tmp, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(tmp, path)
        .map_err(|e| CliError::Io(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}

pub fn ensure_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV columns: t, trace_re, trace_im, min_eig, log_det, entropy,
/// dist_to_mean. Absent diagnostics leave their cell empty.
pub fn trajectory_csv(traj: &FlowTrajectory) -> String {
    let mut out = String::from("t,trace_re,trace_im,min_eig,log_det,entropy,dist_to_mean\n");
    for (t, d) in traj.times.iter().zip(traj.diagnostics.iter()) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            t,
            d.trace.re,
            d.trace.im,
            d.min_eigenvalue,
            fmt_opt(d.log_det),
            fmt_opt(d.entropy),
            d.dist_to_mean,
        ));
    }
    out
}

/// CSV columns: t, hs_dist, trace_dist, eig_l1_gap, entropy_u, entropy_v,
/// entropy_gap, fannes_bound, contraction_envelope.
pub fn stability_csv(report: &StabilityReport) -> String {
    let mut out = String::from(
        "t,hs_dist,trace_dist,eig_l1_gap,entropy_u,entropy_v,entropy_gap,fannes_bound,contraction_envelope\n",
    );
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.t,
            r.hs_distance,
            r.trace_distance,
            r.eig_l1_gap,
            r.entropy_u,
            r.entropy_v,
            r.entropy_gap,
            r.fannes_bound,
            r.contraction_envelope,
        ));
    }
    out
}
