use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::CampaignConfig;
use crate::bounds::Context;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Worst check of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub slack: f64,
    pub context: Context,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialNote {
    pub trial: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub trials: usize,
    /// `None` when no trial produced a check.
    pub min_slack: Option<f64>,
    pub violations: Vec<Violation>,
    pub generator_failures: usize,
    /// Generator violations with the offending node path.
    pub generator_failure_details: Vec<TrialNote>,
    /// Trials that produced no verdict, e.g. an ambiguous Jordan structure.
    pub skipped: Vec<TrialNote>,
    pub rows: Vec<TrialRow>,
    pub wall_time_s: f64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.generator_failures == 0
    }

    /// 0 all pass, 1 a bound was violated, 2 a generator broke its contract.
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            1
        } else if self.generator_failures > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,lhs,rhs,slack,pass\n");
        for r in &self.rows {
            writeln!(out, "{},{:e},{:e},{:e},{}", r.trial, r.lhs, r.rhs, r.slack, r.pass).unwrap();
        }
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, path: &Path, format: ReportFormat) -> Result<()> {
        std::fs::write(path, self.render(format))?;
        Ok(())
    }
}
