use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Structured record of what went into a check.
pub type Context = BTreeMap<String, serde_json::Value>;

/// Outcome of one bound evaluation. A negative slack is data, not an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs` as computed.
    pub slack: f64,
    pub pass: bool,
    pub context: Context,
}

impl SlackReport {
    /// Inequality `lhs ≤ rhs`: passes iff `slack ≥ -tol`.
    pub fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        SlackReport { lhs, rhs, slack, pass: slack >= -tol, context: Context::new() }
    }

    /// Equality `lhs = rhs`: passes iff `|slack| ≤ tol`.
    pub fn equality(lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        SlackReport { lhs, rhs, slack, pass: slack.abs() <= tol, context: Context::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.insert(key, value);
        self
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.context.insert(key.to_string(), v);
    }
}

/// Tolerances shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// A check passes iff `slack ≥ -tol_check`.
    pub tol_check: f64,
    /// Relative rank tolerance for spectra and minimal polynomials.
    pub minpoly_tol: f64,
}

pub const DEFAULT_TOL_CHECK: f64 = 1e-9;

/// `‖G(0)‖` (max entry) below which a map counts as vanishing at the origin.
pub const PRECONDITION_TOL: f64 = 1e-8;

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { tol_check: DEFAULT_TOL_CHECK, minpoly_tol: crate::spectrum::DEFAULT_MINPOLY_TOL }
    }
}

impl CheckOptions {
    /// Same check tolerance, spectra resolved 100x more finely. Failing
    /// checks are re-run with these before being reported.
    pub fn tightened(&self) -> Self {
        CheckOptions { tol_check: self.tol_check, minpoly_tol: self.minpoly_tol / 100.0 }
    }
}
