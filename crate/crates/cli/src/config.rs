use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{CliError, Direction, Format, Init, Stepper};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Velocity {
    Text(String),
    Number(f64),
}

/// Keys accepted in a `--config` TOML file. Each command reads the keys it
/// understands; command-line flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub sites: Option<usize>,
    pub steps: Option<usize>,
    pub mu: Option<OneOrMany<f64>>,
    pub width: Option<f64>,
    pub k0: Option<f64>,
    pub center: Option<f64>,
    pub chorus: Option<f64>,
    pub chronon: Option<f64>,
    pub init: Option<Init>,
    pub direction: Option<Direction>,
    pub stepper: Option<Stepper>,
    pub substeps: Option<usize>,
    pub cadence: Option<usize>,
    pub load_state: Option<PathBuf>,
    pub save_state: Option<PathBuf>,
    pub nk: Option<usize>,
    pub measure: Option<bool>,
    pub burn_in: Option<usize>,
    pub floor: Option<f64>,
    pub levels: Option<usize>,
    pub time: Option<f64>,
    pub beta: Option<Velocity>,
    pub max_den: Option<i64>,
    pub d: Option<OneOrMany<u64>>,
    pub ticks: Option<u64>,
    pub phase: Option<u64>,
    pub factor: Option<u64>,
    pub reciprocal: Option<bool>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// flag > config file > default
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
