//! `key = value` run configuration, one table per command.
//!
//! ```toml
//! [units]
//! c = 1.0
//! cm = 2.0
//! hbar = 1.0
//!
//! [output]
//! format = "csv"
//! seed = 7
//!
//! [boost]
//! v = 1.2
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::output::OutputFormat;
use super::CliError;
use crate::context::InvariantSpeedContext;

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "CMAX_CONFIG";

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    pub c: Option<f64>,
    pub cm: Option<f64>,
    pub hbar: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<OutputFormat>,
    pub path: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoostSection {
    pub v: Option<f64>,
    pub events: Option<Vec<[f64; 4]>>,
    pub inverse: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComposeSection {
    pub v: Option<f64>,
    pub u: Option<Vec<f64>>,
    pub inverse: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CollideSection {
    pub v: Option<f64>,
    pub vprime: Option<f64>,
    pub mc: Option<f64>,
    pub mc1: Option<f64>,
    pub mc2: Option<f64>,
    pub batch: Option<PathBuf>,
    pub random: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TrajectorySection {
    pub mc: Option<f64>,
    pub v0: Option<Vec<f64>>,
    pub x0: Option<Vec<f64>>,
    pub force: Option<Vec<f64>>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WaveSection {
    pub equation: Option<String>,
    pub mc: Option<f64>,
    pub n: Option<usize>,
    pub length: Option<f64>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub mode: Option<i64>,
    pub initial: Option<PathBuf>,
    pub snap_every: Option<usize>,
    pub snapshots: Option<PathBuf>,
    pub cfl: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub units: UnitsSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub boost: BoostSection,
    #[serde(default)]
    pub compose: ComposeSection,
    #[serde(default)]
    pub collide: CollideSection,
    #[serde(default)]
    pub trajectory: TrajectorySection,
    #[serde(default)]
    pub wave: WaveSection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        if cfg.units.cm.is_some() {
            cfg.context(None, None, None)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Context from flags, falling back to the `[units]` table and then to
    /// natural units (`c = ħ = 1`). `c_m` has no default.
    pub fn context(
        &self,
        c: Option<f64>,
        cm: Option<f64>,
        hbar: Option<f64>,
    ) -> Result<InvariantSpeedContext, CliError> {
        let c = c.or(self.units.c).unwrap_or(1.0);
        let hbar = hbar.or(self.units.hbar).unwrap_or(1.0);
        let cm = cm
            .or(self.units.cm)
            .ok_or_else(|| CliError::Validation("missing maximum speed (--cm or [units] cm)".into()))?;
        Ok(InvariantSpeedContext::new(c, cm, hbar)?)
    }
}
