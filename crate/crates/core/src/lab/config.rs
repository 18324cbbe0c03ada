//! Experiment configuration, read from TOML.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::counting::EngineChoice;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::ramsey::DEFAULT_NODE_BUDGET;
use crate::sets::SetKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    MixingTrend,
    RothSmallDoubling,
    PowerEquation,
    Schur,
    Hindman,
    RegularPosition,
    ProductRich,
    GrowthProfile,
}

impl Recipe {
    pub const ALL: [Recipe; 8] = [
        Recipe::MixingTrend,
        Recipe::RothSmallDoubling,
        Recipe::PowerEquation,
        Recipe::Schur,
        Recipe::Hindman,
        Recipe::RegularPosition,
        Recipe::ProductRich,
        Recipe::GrowthProfile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::MixingTrend => "mixing-trend",
            Recipe::RothSmallDoubling => "roth-small-doubling",
            Recipe::PowerEquation => "power-equation",
            Recipe::Schur => "schur",
            Recipe::Hindman => "hindman",
            Recipe::RegularPosition => "regular-position",
            Recipe::ProductRich => "product-rich",
            Recipe::GrowthProfile => "growth-profile",
        }
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown recipe `{s}`")))
    }
}

impl std::fmt::Display for Recipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckModeName {
    #[default]
    Exact,
    Sampled,
}

/// Recipe knobs; each recipe reads the ones it needs and falls back to its
/// own default for the rest.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RecipeParams {
    /// Density of random sets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    /// Random instances per group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<usize>,
    /// Tuple length.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Number of colors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<[u64; 3]>,
    /// Density threshold as a fraction such as `"1/2"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    /// Interval lengths.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<CheckModeName>,
    /// Samples drawn by sampled checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Highest power in growth profiles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nontrivial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineChoice>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub order_cap: usize,
    pub node_budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_cap: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            order_cap: 200_000,
            node_budget: DEFAULT_NODE_BUDGET,
            exact_cap: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::InvalidParameter(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputOptions {
    pub format: OutputFormat,
    /// Adds wall-clock time to reports, which then differ between runs.
    pub record_timing: bool,
}

/// A self-contained experiment description.
///
/// `grid` turns the config into a sweep: each key names an axis (`group`,
/// `set`, or any field of `params`) and lists the values it takes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub recipe: Recipe,
    #[serde(default, with = "seed_format")]
    pub seed: u64,
    #[serde(default)]
    pub groups: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<SetKind>,
    #[serde(default)]
    pub params: RecipeParams,
    #[serde(default)]
    pub budget: Budget,
    #[serde(default)]
    pub output: OutputOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<BTreeMap<String, Vec<toml::Value>>>,
}

impl ExperimentConfig {
    pub fn new(recipe: Recipe, groups: Vec<GroupSpec>) -> Self {
        ExperimentConfig {
            recipe,
            seed: 0,
            groups,
            sets: Vec::new(),
            params: RecipeParams::default(),
            budget: Budget::default(),
            output: OutputOptions::default(),
            grid: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }
}

/// TOML integers are signed, so seeds above `i64::MAX` are written as strings.
mod seed_format {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*seed) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&seed.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(u64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(v),
            Raw::Text(t) => t.trim().parse().map_err(serde::de::Error::custom),
        }
    }
}
