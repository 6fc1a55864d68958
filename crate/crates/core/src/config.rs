//! Run-wide settings shared by the library entry points and the CLI.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranks::DEFAULT_ORACLE_CAP;
use crate::stats::{ExhaustiveOptions, DEFAULT_MAX_EXHAUSTIVE_N};
use crate::topology::DEFAULT_MAX_CL_CHAINS;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Master seed for every randomized command.
    pub seed: u64,
    /// Maximal chains enumerated by the labeling and shelling checks.
    pub max_chains: usize,
    /// Largest interval handed to the exhaustive k-family oracle.
    pub max_oracle: usize,
    /// Largest `n` enumerated exhaustively.
    pub max_exhaustive_n: usize,
    /// Worker threads; 0 picks the number of cores.
    pub threads: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            max_chains: DEFAULT_MAX_CL_CHAINS,
            max_oracle: DEFAULT_ORACLE_CAP,
            max_exhaustive_n: DEFAULT_MAX_EXHAUSTIVE_N,
            threads: 0,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("max_chains", self.max_chains),
            ("max_oracle", self.max_oracle),
            ("max_exhaustive_n", self.max_exhaustive_n),
        ] {
            if v == 0 {
                return Err(Error::InvalidInput(format!("{what} must be positive")));
            }
        }
        Ok(())
    }

    pub fn exhaustive(&self) -> ExhaustiveOptions {
        ExhaustiveOptions {
            threads: self.threads,
            max_n: self.max_exhaustive_n,
        }
    }
}
