use serde::{Deserialize, Serialize};

use super::subharmonic::{SAMPLES_PER_CIRCLE, TOL_QUAD};
use crate::bounds::{CheckOptions, DEFAULT_TOL_CHECK};
use crate::error::{Error, Result};
use crate::spectrum::DEFAULT_MINPOLY_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignKind {
    Thm1,
    Thm2,
    Globevnik,
    RansfordWhite,
    Subharmonic,
    Sharpness,
    Counterexample,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::Thm1,
        CampaignKind::Thm2,
        CampaignKind::Globevnik,
        CampaignKind::RansfordWhite,
        CampaignKind::Subharmonic,
        CampaignKind::Sharpness,
        CampaignKind::Counterexample,
    ];
}

/// Everything that determines a campaign. The report is a pure function of
/// this value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub theorem: CampaignKind,
    /// Fixed dimension, or `None` to draw one per trial.
    pub n: Option<usize>,
    pub trials: usize,
    /// Maximum polynomial degree of sampled disc maps.
    pub degree: usize,
    /// Maximum expression depth of sampled self-maps.
    pub depth: usize,
    pub seed: u64,
    pub tol_check: f64,
    pub minpoly_tol: f64,
    pub tol_quad: f64,
    /// Point pairs (disc maps) or inputs (self-maps) per trial.
    pub points_per_trial: usize,
    pub samples_per_circle: usize,
}

impl CampaignConfig {
    pub fn new(theorem: CampaignKind) -> Self {
        CampaignConfig {
            theorem,
            n: None,
            trials: 100,
            degree: 3,
            depth: 3,
            seed: 0,
            tol_check: DEFAULT_TOL_CHECK,
            minpoly_tol: DEFAULT_MINPOLY_TOL,
            tol_quad: TOL_QUAD,
            points_per_trial: 5,
            samples_per_circle: SAMPLES_PER_CIRCLE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n {
            if !(1..=16).contains(&n) {
                return Err(Error::invalid(format!("n = {n} is outside 1..=16")));
            }
            let min = match self.theorem {
                CampaignKind::Sharpness | CampaignKind::Counterexample => 2,
                _ => 1,
            };
            if n < min {
                return Err(Error::invalid(format!("this campaign needs n >= {min}")));
            }
        }
        if self.depth == 0 {
            return Err(Error::invalid("depth must be at least 1"));
        }
        if self.points_per_trial == 0 || self.samples_per_circle == 0 {
            return Err(Error::invalid("points per trial and samples per circle must be positive"));
        }
        for (name, v) in [("tol", self.tol_check), ("minpoly tol", self.minpoly_tol), ("quadrature tol", self.tol_quad)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn check_options(&self) -> CheckOptions {
        CheckOptions { tol_check: self.tol_check, minpoly_tol: self.minpoly_tol }
    }
}
