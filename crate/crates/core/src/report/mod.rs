//! Compliance evaluation and ICM intent/expectation report generation,
//! plus the inverse extraction used when reading stored reports back.

mod extract;
mod graphs;
mod verdict;

pub use extract::{extract_branches, extract_report, extract_verdicts, ExtractedReport, ExtractedVerdict};
pub use graphs::{
    expectation_report, feedback, intent_report, IntentReport, StateEvent, EXPECTATION_REPORT_NODE,
};
pub use verdict::{
    format_observed, judge, parse_observed, round4, ComplianceStatus, ComplianceVerdict, Observed,
    Reason,
};

use thiserror::Error;

/// Shape check for generated expectation reports: one binding per verdict.
pub const REPORT_SHAPE_QUERY: &str = include_str!("../../resources/queries/report-shape.rq");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unit mismatch for KPI '{0}'")]
    UnitMismatch(String),
    #[error("no threshold for KPI '{0}'")]
    MissingThreshold(String),
    #[error("no verdicts to report")]
    EmptyVerdicts,
    #[error("no expectation reports")]
    EmptyReports,
    #[error("malformed report: {0}")]
    Malformed(String),
}
