//! Run configuration.
//!
//! TOML with dotted sections, e.g.
//!
//! ```toml
//! A = -1.0
//! B = 0.5
//! rho_list = [0.1, 0.7, 1.7]
//! t_list = [30.0, 45.0, 60.0]
//! output_dir = "out"
//! solver.dx = 0.1
//! solver.dt = 0.005
//! solver.t_final = 60.0
//! ```
//!
//! The only environment override is `OUTPUT_DIR`.

use std::fs;
use std::path::{Path, PathBuf};

use dsw_edge_core::scattering::ScatteringData;
use dsw_edge_core::specfun::QuadratureSpec;
use dsw_edge_core::spectrum::Genus0Spectrum;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Comma-separated values with `#` header lines.
    #[default]
    Csv,
    /// One JSON document with a record per row.
    Json,
}

impl Format {
    /// File extension.
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Mirror of [`QuadratureSpec`] for (de)serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Absolute tolerance.
    pub abs_tol: f64,
    /// Relative tolerance.
    pub rel_tol: f64,
    /// Panel bisection budget.
    pub max_subdivisions: usize,
    /// Truncation of half-line integrals.
    pub tail_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        Self { abs_tol: q.abs_tol, rel_tol: q.rel_tol, max_subdivisions: q.max_subdivisions, tail_cutoff: q.tail_cutoff }
    }
}

impl QuadratureConfig {
    /// # Errors
    /// [`CliError::Numeric`] for non-positive tolerances.
    pub fn spec(&self) -> Result<QuadratureSpec> {
        Ok(QuadratureSpec::new(self.abs_tol, self.rel_tol, self.max_subdivisions, self.tail_cutoff)?)
    }
}

/// Initial datum of `simulate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    /// Step `B e^{−2iAx}` on `x < 0`.
    #[default]
    Step,
    /// `sech x`.
    Soliton,
    /// `q ≡ B`.
    PlaneWave,
    /// `q ≡ 0`.
    Zero,
}

/// Solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Target grid spacing; the grid is rounded up to a power of two.
    pub dx: f64,
    /// Time step, at most `dx/10`.
    pub dt: f64,
    /// Final time.
    pub t_final: f64,
    /// Width of the smoothing ramp; defaults to `2dx`.
    pub ramp_width: Option<f64>,
    /// Sponge width per side as a fraction of the domain.
    pub sponge_fraction: f64,
    /// Extra room beyond both edges.
    pub margin: f64,
    /// Explicit domain; otherwise sized from the edge speeds.
    pub domain: Option<(f64, f64)>,
    /// Snapshot times; the final time is always written.
    pub snapshots: Vec<f64>,
    /// Initial datum.
    pub initial: InitialKind,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dx: 0.1,
            dt: 0.005,
            t_final: 60.0,
            ramp_width: None,
            sponge_fraction: 0.1,
            margin: 40.0,
            domain: None,
            snapshots: Vec::new(),
            initial: InitialKind::Step,
        }
    }
}

impl SolverConfig {
    /// Ramp width in force.
    pub fn ramp(&self) -> f64 {
        self.ramp_width.unwrap_or(2.0 * self.dx)
    }
}

/// Residual-check settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChecksConfig {
    /// Flip the sign of the Laguerre jump (negative control).
    pub inject_fault: bool,
}

/// Where `compare` takes its numerical fields from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareSource {
    /// Snapshot files of an earlier `simulate` run in `output_dir`.
    #[default]
    Snapshots,
    /// Run the solver in-process.
    Simulate,
    /// The asymptotic profile itself.
    SelfCheck,
}

/// Comparison settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareConfig {
    /// Field source.
    pub source: CompareSource,
    /// Directory holding snapshots; defaults to `output_dir`.
    pub input_dir: Option<PathBuf>,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self { source: CompareSource::Snapshots, input_dir: None }
    }
}

/// Full configuration of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Background parameter `A`.
    #[serde(rename = "A")]
    pub a: f64,
    /// Background amplitude `B > 0`.
    #[serde(rename = "B")]
    pub b: f64,
    /// Edge offsets `ρ`.
    #[serde(default = "default_rho_list")]
    pub rho_list: Vec<f64>,
    /// Times, all `> 1`.
    #[serde(default = "default_t_list")]
    pub t_list: Vec<f64>,
    /// Comparison window as offsets from `C·t`.
    #[serde(default)]
    pub x_window: Option<(f64, f64)>,
    /// Largest admissible `ρ`.
    #[serde(default = "default_rho_max")]
    pub rho_max: f64,
    /// Output directory.
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Output encoding.
    #[serde(default)]
    pub format: Format,
    /// Quadrature tolerances.
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    /// Solver settings.
    #[serde(default)]
    pub solver: SolverConfig,
    /// Check settings.
    #[serde(default)]
    pub checks: ChecksConfig,
    /// Comparison settings.
    #[serde(default)]
    pub compare: CompareConfig,
}

fn default_rho_list() -> Vec<f64> {
    vec![0.1, 0.7, 1.7]
}

fn default_t_list() -> Vec<f64> {
    vec![30.0, 45.0, 60.0]
}

fn default_rho_max() -> f64 {
    6.0
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Default comparison window around `C·t`.
pub const DEFAULT_WINDOW: (f64, f64) = (-30.0, 10.0);

impl RunConfig {
    /// Parses and validates TOML text. Does not consult the environment.
    ///
    /// # Errors
    /// [`CliError::Toml`] or [`CliError::Config`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads `path`, then applies `OUTPUT_DIR` if set.
    ///
    /// # Errors
    /// As [`RunConfig::from_toml`]; [`CliError::Config`] for an unreadable file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let Some(dir) = std::env::var_os("OUTPUT_DIR").filter(|d| !d.is_empty()) {
            cfg.output_dir = PathBuf::from(dir);
        }
        Ok(cfg)
    }

    /// Checks every invariant.
    ///
    /// # Errors
    /// [`CliError::Config`] naming the first violation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if !self.a.is_finite() || !(self.b > 0.0 && self.b.is_finite()) {
            return bad(format!("need finite A and B > 0, got A = {}, B = {}", self.a, self.b));
        }
        if self.rho_list.is_empty() || self.t_list.is_empty() {
            return bad("rho_list and t_list must be non-empty".into());
        }
        if let Some(t) = self.t_list.iter().find(|t| !(**t > 1.0 && t.is_finite())) {
            return bad(format!("t_list entry {t} must exceed 1"));
        }
        if !(self.rho_max >= 0.0) {
            return bad(format!("rho_max = {} must be >= 0", self.rho_max));
        }
        if let Some(r) = self.rho_list.iter().find(|r| !(**r >= 0.0 && **r <= self.rho_max)) {
            return bad(format!("rho_list entry {r} outside [0, rho_max = {}]", self.rho_max));
        }
        if let Some((lo, hi)) = self.x_window {
            if !(lo < hi) {
                return bad(format!("x_window ({lo}, {hi}) is empty"));
            }
        }
        let s = &self.solver;
        if !(s.dx > 0.0 && s.dt > 0.0 && s.t_final > 0.0) {
            return bad("solver.dx, solver.dt and solver.t_final must be positive".into());
        }
        if s.dt > 0.1 * s.dx {
            return bad(format!("solver.dt = {} exceeds solver.dx/10", s.dt));
        }
        if !(s.ramp() >= 0.0) || !(0.0..0.5).contains(&s.sponge_fraction) || !(s.margin >= 0.0) {
            return bad("need ramp_width >= 0, 0 <= sponge_fraction < 0.5, margin >= 0".into());
        }
        if let Some(t) = s.snapshots.iter().find(|t| !(**t >= 0.0 && **t <= s.t_final)) {
            return bad(format!("snapshot time {t} outside [0, t_final]"));
        }
        if let Some((lo, hi)) = s.domain {
            if !(lo < hi) {
                return bad(format!("solver.domain ({lo}, {hi}) is empty"));
            }
        }
        self.quadrature.spec()?;
        Ok(())
    }

    /// Background spectrum.
    ///
    /// # Errors
    /// Core validation errors.
    pub fn spectrum(&self) -> Result<Genus0Spectrum> {
        Ok(Genus0Spectrum::new(self.a, self.b)?)
    }

    /// Scattering data for the configured background.
    ///
    /// # Errors
    /// Core errors.
    pub fn scattering(&self) -> Result<ScatteringData> {
        Ok(ScatteringData::new(self.spectrum()?, self.quadrature.spec()?)?)
    }

    /// Comparison window at time `t` in absolute coordinates.
    pub fn window_at(&self, t: f64) -> (f64, f64) {
        let (lo, hi) = self.x_window.unwrap_or(DEFAULT_WINDOW);
        let c = -4.0 * self.a;
        (c * t + lo, c * t + hi)
    }

    /// Single-line JSON echo embedded in output headers.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}
