//! Run configuration: a TOML file with one optional table per subcommand.
//! Command-line flags override file values.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use hypspec::geometry::FenchelNielsen;
use hypspec::planar::{PlanarConfig, PlanarDomain};
use hypspec::selberg::ZetaOptions;
use hypspec::solver1d::Potential;
use hypspec::surface_mps::{SearchOptions, WindowPlan};

/// Raised for anything the user can fix by editing the config or flags.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub output_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub solve1d: Option<Solve1dConfig>,
    pub solve_domain: Option<DomainConfig>,
    pub solve_surface: Option<SurfaceConfig>,
    pub length_spectrum: Option<LengthConfig>,
    pub selberg: Option<SelbergConfig>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))
    }
}

/// Potential given by name or by polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialSpec {
    Named(String),
    Coefficients(Vec<f64>),
}

impl PotentialSpec {
    pub fn resolve(&self) -> anyhow::Result<Potential> {
        match self {
            Self::Named(n) => Potential::named(n).ok_or_else(|| config_error(format!("unknown potential `{n}`"))),
            Self::Coefficients(c) => Ok(Potential::polynomial(c.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Solve1dConfig {
    pub half_length: f64,
    pub potential: PotentialSpec,
    pub range: [f64; 2],
    pub step: f64,
}

impl Default for Solve1dConfig {
    fn default() -> Self {
        Self {
            half_length: 1.0,
            potential: PotentialSpec::Named("zero".into()),
            range: [0.5, 250.0],
            step: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DomainConfig {
    pub domain: PlanarDomain,
    pub range: [f64; 2],
    pub step: f64,
    #[serde(default)]
    pub planar: PlanarConfig,
}

impl Default for DomainConfig {
    fn default() -> Self {
        Self {
            domain: PlanarDomain::unit_disk(),
            range: [1.0, 30.0],
            step: 0.05,
            planar: PlanarConfig::default(),
        }
    }
}

/// Named surface or explicit Fenchel–Nielsen data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Named(String),
    FenchelNielsen(FenchelNielsen),
}

impl SurfaceSpec {
    pub fn bolza() -> Self {
        Self::Named("bolza".into())
    }

    pub fn resolve(&self) -> anyhow::Result<FenchelNielsen> {
        match self {
            Self::Named(n) if n == "bolza" => Ok(FenchelNielsen::bolza_mw()),
            Self::Named(n) => Err(config_error(format!("unknown surface `{n}`"))),
            Self::FenchelNielsen(f) => {
                f.validate().map_err(|e| config_error(e.to_string()))?;
                Ok(f.clone())
            }
        }
    }

    pub fn is_bolza(&self) -> bool {
        matches!(self, Self::Named(n) if n == "bolza")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SurfaceConfig {
    pub surface: SurfaceSpec,
    pub range: [f64; 2],
    /// Fixed basis size; when absent the range is searched in windows.
    pub n: Option<usize>,
    /// Scan step for a fixed basis.
    pub step: Option<f64>,
    #[serde(default)]
    pub window: WindowPlan,
    #[serde(default)]
    pub search: SearchOptions,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        Self {
            surface: SurfaceSpec::bolza(),
            range: [0.0, 40.0],
            n: None,
            step: None,
            window: WindowPlan::default(),
            search: SearchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LengthConfig {
    pub surface: SurfaceSpec,
    pub l_max: f64,
}

impl Default for LengthConfig {
    fn default() -> Self {
        Self {
            surface: SurfaceSpec::bolza(),
            l_max: 8.0,
        }
    }
}

/// Inputs shared by `zeta`, `det`, `verify-heat` and `verify-riesz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelbergConfig {
    pub surface: SurfaceSpec,
    /// Genus when the surface is not named.
    pub genus: Option<usize>,
    pub eigenvalues: Option<PathBuf>,
    /// Length-spectrum file; computed from the surface when absent.
    pub lengths: Option<PathBuf>,
    pub l_max: f64,
    pub s: Vec<f64>,
    #[serde(default)]
    pub zeta: ZetaOptions,
    /// Certificate times.
    pub t: f64,
    pub big_t: f64,
    /// Use only `λ₀ … λ_N`; all listed eigenvalues when absent.
    pub n: Option<usize>,
    /// `[t_lo, t_hi, samples]` of the `R_N` curve.
    pub heat_grid: (f64, f64, usize),
    /// `[t_lo, t_hi, samples]` of the Riesz curve.
    pub riesz_grid: (f64, f64, usize),
    /// Eigenvalues (by value, within 1e-6) removed before the Riesz test.
    pub remove: Vec<f64>,
}

impl Default for SelbergConfig {
    fn default() -> Self {
        Self {
            surface: SurfaceSpec::bolza(),
            genus: None,
            eigenvalues: None,
            lengths: None,
            l_max: 8.0,
            s: vec![-0.5],
            zeta: ZetaOptions::default(),
            t: 0.095,
            big_t: 2.0,
            n: None,
            heat_grid: (0.05, 0.3, 51),
            riesz_grid: (1.0, 14.0, 261),
            remove: vec![],
        }
    }
}

impl SelbergConfig {
    pub fn genus(&self) -> anyhow::Result<usize> {
        if self.surface.is_bolza() {
            return Ok(2);
        }
        match (self.genus, &self.surface) {
            (Some(g), _) => Ok(g),
            (None, SurfaceSpec::FenchelNielsen(f)) => Ok(f.genus),
            _ => Err(config_error("genus is required for this surface")),
        }
    }
}

/// `samples` equally spaced points of `[lo, hi]`.
pub fn grid((lo, hi, samples): (f64, f64, usize)) -> anyhow::Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo) || samples == 0 {
        return Err(config_error("grid needs 0 < lo <= hi and at least one sample"));
    }
    if samples == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect())
}
