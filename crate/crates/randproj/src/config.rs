//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use randproj_core::ldp::Estimator;
use randproj_core::{EventRegion, NuDistribution};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::load_discrete;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Slln,
    Rate,
    LdpCheck,
    Intrinsic,
    Project,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Slln => "slln",
            Command::Rate => "rate",
            Command::LdpCheck => "ldp-check",
            Command::Intrinsic => "intrinsic",
            Command::Project => "project",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Every setting a command may read. Unset fields take command defaults,
/// which are written back before the configuration is embedded in output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    /// Number of directions in the support-function grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    /// Number of `u` values in a rate table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimators: Option<Vec<String>>,
    /// Intrinsic volume estimator: `auto`, `exact` or `mc`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        RunConfig { $($field: $top.$field.or($base.$field)),* }
    };
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay!(base, top; command, nu, d, n, n_list, k, samples, trials, seed, region, grid,
            points, u_max, estimators, method, x, out, format)
    }

    /// Rejects zero counts and non-finite reals.
    pub fn validate(&self) -> Result<(), CliError> {
        let counts = [
            ("d", self.d.map(|v| v as u64)),
            ("n", self.n.map(|v| v as u64)),
            ("k", self.k.map(|v| v as u64)),
            ("samples", self.samples),
            ("trials", self.trials.map(u64::from)),
            ("grid", self.grid.map(|v| v as u64)),
            ("points", self.points.map(|v| v as u64)),
        ];
        for (name, value) in counts {
            if value == Some(0) {
                return Err(CliError::config(format!("{name} must be at least 1")));
            }
        }
        if let Some(list) = &self.n_list {
            if list.is_empty() || list.contains(&0) {
                return Err(CliError::config("n_list must be a nonempty list of positive sizes"));
            }
        }
        if let Some(u) = self.u_max {
            if !(u.is_finite() && u > 0.0) {
                return Err(CliError::config("u_max must be positive and finite"));
            }
        }
        if let Some(x) = &self.x {
            if x.iter().any(|v| !v.is_finite()) {
                return Err(CliError::config("x must be finite"));
            }
        }
        Ok(())
    }

    pub fn require_seed(&self) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::config("a seed is required (--seed); there is no default"))
    }

    pub fn require_nu(&self) -> Result<NuDistribution, CliError> {
        let desc = self.nu.as_deref().ok_or_else(|| CliError::config("--nu is required"))?;
        parse_nu(desc)
    }

    /// `n_list` if given, else the single `n`.
    pub fn n_values(&self) -> Result<Vec<usize>, CliError> {
        match (&self.n_list, self.n) {
            (Some(list), _) => Ok(list.clone()),
            (None, Some(n)) => Ok(vec![n]),
            (None, None) => Err(CliError::config("--n or --n-list is required")),
        }
    }

    pub fn estimator_list(&self) -> Result<Vec<Estimator>, CliError> {
        let names = self.estimators.as_deref().unwrap_or(&[]);
        if names.is_empty() {
            return Err(CliError::config("at least one estimator is required"));
        }
        names
            .iter()
            .map(|s| {
                Estimator::parse(s.trim()).ok_or_else(|| {
                    CliError::config(format!("unknown estimator {s:?} (mc_uniform, mc_gaussian, exact_enum)"))
                })
            })
            .collect()
    }
}

/// `gaussian`, `rademacher`, `uniform` or `discrete:<path>`.
pub fn parse_nu(desc: &str) -> Result<NuDistribution, CliError> {
    match desc {
        "gaussian" => Ok(NuDistribution::gaussian()),
        "rademacher" => Ok(NuDistribution::rademacher()),
        "uniform" | "uniform_symmetric" => Ok(NuDistribution::uniform_symmetric()),
        other => match other.strip_prefix("discrete:") {
            Some(path) => load_discrete(Path::new(path)),
            None => Err(CliError::config(format!(
                "unknown law {other:?} (gaussian, rademacher, uniform, discrete:<path>)"
            ))),
        },
    }
}

/// `half:<u_csv>:<a>` or `ballc:<r>`; `d` is needed for ball complements and
/// checked against the direction length of half-spaces.
pub fn parse_region(desc: &str, d: Option<usize>) -> Result<EventRegion, CliError> {
    let bad = || CliError::config(format!("malformed region {desc:?} (half:<u_csv>:<a> or ballc:<r>)"));
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    if let Some(rest) = desc.strip_prefix("half:") {
        let (dir, a) = rest.rsplit_once(':').ok_or_else(bad)?;
        let u = dir.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
        if let Some(d) = d {
            if d != u.len() {
                return Err(CliError::config(format!("region direction has {} coordinates but d = {d}", u.len())));
            }
        }
        Ok(EventRegion::half_space(&u, number(a)?)?)
    } else if let Some(r) = desc.strip_prefix("ballc:") {
        let d = d.ok_or_else(|| CliError::config("--d is required for ball complement regions"))?;
        Ok(EventRegion::ball_complement(d, number(r)?)?)
    } else {
        Err(bad())
    }
}
