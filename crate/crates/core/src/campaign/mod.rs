//! Seeded verification campaigns and their reports.

mod config;
mod report;
mod run;
mod subharmonic;

pub use config::{CampaignConfig, CampaignKind};
pub use report::{CampaignReport, ReportFormat, TrialNote, TrialRow, Violation};
pub use run::run_campaign;
pub use subharmonic::{circle_average, subharmonicity_check, SAMPLES_PER_CIRCLE, TOL_QUAD};
