use std::path::PathBuf;

use cobord::regseq::CoeffField;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Settings shared by every command, echoed into each report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub truncation_dim: u32,
    pub fields: Vec<CoeffField>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.truncation_dim < 4 || !self.truncation_dim.is_multiple_of(2) {
            return Err(format!("--upto must be even and at least 4, got {}", self.truncation_dim));
        }
        if self.fields.is_empty() {
            return Err("--fields must name at least one field".into());
        }
        Ok(())
    }
}
