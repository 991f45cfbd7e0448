//! Run configuration shared by the command-line front end and the reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rootdata::DEFAULT_ENUMERATION_CAP;
use crate::stringy::DEFAULT_ENGINE_CAP;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
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
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" | "txt" => Ok(OutputFormat::Text),
            _ => Err(Error::Parse(format!("unknown output format `{s}` (json, csv, text)"))),
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

/// Caps, output format and the seed for every randomized step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest group materialized by plain enumeration.
    pub group_order_cap: u64,
    /// Largest group handed to the stringy engine.
    pub engine_cap: u64,
    pub denominator_bound: i64,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group_order_cap: DEFAULT_ENUMERATION_CAP,
            engine_cap: DEFAULT_ENGINE_CAP,
            denominator_bound: 4,
            output_format: OutputFormat::Json,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.group_order_cap == 0 || self.engine_cap == 0 {
            return Err(Error::Parse("caps must be positive".into()));
        }
        if self.denominator_bound < 1 {
            return Err(Error::Parse("denominator bound must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.group_order_cap, 10_000_000);
        assert_eq!(c.engine_cap, 100_000);
        assert!(c.validate().is_ok());
        let bad = RunConfig { engine_cap: 0, ..c };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn formats() {
        assert_eq!("CSV".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
        let j = serde_json::to_string(&RunConfig::default()).unwrap();
        assert!(j.contains(r#""output_format":"json""#));
        assert!(j.contains(r#""seed":0"#));
    }
}
