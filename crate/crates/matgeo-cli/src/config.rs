//! Experiment configuration: one JSON document per invocation.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use matgeo::algebra::{io::matrix_from_json, random_pd, SplitMix64};
use matgeo::geometry::{GeneratorSpec, GeometryContext};
use matgeo::Matrix;

use crate::output::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub generators: GeneratorConfig,
    pub seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub props: Option<PropsConfig>,
    #[serde(default)]
    pub spectrum: Option<SpectrumConfig>,
    #[serde(default)]
    pub flow: Option<FlowConfig>,
    #[serde(default)]
    pub stability: Option<StabilityConfig>,
    #[serde(default)]
    pub poisson: Option<PoissonConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorConfig {
    ClockShift,
    Custom { x: PathBuf, y: PathBuf },
}

impl GeneratorConfig {
    pub fn label(&self) -> &'static str {
        match self {
            GeneratorConfig::ClockShift => "clock_shift",
            GeneratorConfig::Custom { .. } => "custom",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropsConfig {
    pub samples: usize,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default)]
    pub dump_eigenmatrices: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowConfig {
    pub u0: MatrixSource,
    pub t_max: f64,
    #[serde(default)]
    pub step: Option<f64>,
    #[serde(default)]
    pub record_stride: Option<usize>,
    /// Integrator name for the heat command ("exact" or "rk4").
    #[serde(default)]
    pub method: Option<String>,
    /// Times at which full states are dumped as matrix JSON.
    #[serde(default)]
    pub dump_times: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityConfig {
    pub u0: MatrixSource,
    pub v0: MatrixSource,
    pub times: Vec<f64>,
    #[serde(default)]
    pub fannes_dim: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonConfig {
    pub b: PathBuf,
}

/// Where an initial state comes from: a matrix file or the seeded
/// positive definite sampler.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixSource {
    File(PathBuf),
    RandomPd {
        min_eig: f64,
        scale: f64,
        /// Normalize to unit trace after construction.
        #[serde(default)]
        unit_trace: bool,
    },
}

/// A parsed configuration plus the directory its relative paths resolve
/// against.
pub struct Experiment {
    pub config: ExperimentConfig,
    base_dir: PathBuf,
}

impl Experiment {
    pub fn load(config_path: &Path, seed_override: Option<u64>) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(config_path).map_err(|e| {
            CliError::Io(format!("cannot read config {}: {e}", config_path.display()))
        })?;
        let mut config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config JSON: {e}")))?;
        if let Some(seed) = seed_override {
            config.seed = seed;
        }
        if config.n < 2 {
            return Err(CliError::Usage(format!(
                "n must be at least 2, got {}",
                config.n
            )));
        }
        let base_dir = config_path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(Self { config, base_dir })
    }

    fn resolve_path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn load_matrix(&self, p: &Path) -> Result<Matrix, CliError> {
        let full = self.resolve_path(p);
        let text = std::fs::read_to_string(&full)
            .map_err(|e| CliError::Io(format!("cannot read matrix {}: {e}", full.display())))?;
        let m = matrix_from_json(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", full.display())))?;
        if m.dim() != self.config.n {
            return Err(CliError::Usage(format!(
                "{} has dimension {}, config says n = {}",
                full.display(),
                m.dim(),
                self.config.n
            )));
        }
        Ok(m)
    }

    /// Materialize a matrix source; seeded sources draw from `rng`.
    pub fn resolve_source(
        &self,
        source: &MatrixSource,
        rng: &mut SplitMix64,
    ) -> Result<Matrix, CliError> {
        match source {
            MatrixSource::File(p) => self.load_matrix(p),
            MatrixSource::RandomPd {
                min_eig,
                scale,
                unit_trace,
            } => {
                let m = random_pd(rng.next_u64(), self.config.n, *min_eig, *scale)?;
                if *unit_trace {
                    Ok(m.scale(1.0 / m.trace().re))
                } else {
                    Ok(m)
                }
            }
        }
    }

    pub fn geometry(&self) -> Result<GeometryContext, CliError> {
        let spec = match &self.config.generators {
            GeneratorConfig::ClockShift => GeneratorSpec::ClockShift,
            GeneratorConfig::Custom { x, y } => GeneratorSpec::Custom {
                x: self.load_matrix(x)?,
                y: self.load_matrix(y)?,
            },
        };
        Ok(GeometryContext::new(self.config.n, spec)?)
    }
}
