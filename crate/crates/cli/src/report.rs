//! Report files. See `docs/report-schema.md`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nctrace::verify::{Verdict, VerificationCase};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "nctrace-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub error: usize,
}

/// The deterministic part of a suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: String,
    pub engine_version: String,
    pub field: String,
    pub status: Status,
    pub counts: Counts,
    pub cases: Vec<VerificationCase>,
}

impl VerificationReport {
    pub fn new(suite: &str, field: &str, cases: Vec<VerificationCase>) -> VerificationReport {
        let mut counts = Counts::default();
        for c in &cases {
            match c.verdict {
                Verdict::Pass => counts.pass += 1,
                Verdict::Fail => counts.fail += 1,
                Verdict::Inapplicable => counts.inapplicable += 1,
                Verdict::Error => counts.error += 1,
            }
        }
        let ok = cases.iter().all(|c| match c.verdict {
            Verdict::Pass => true,
            Verdict::Inapplicable => c.reason.as_deref().is_some_and(|r| !r.is_empty()),
            _ => false,
        });
        VerificationReport {
            schema: SCHEMA.into(),
            suite: suite.into(),
            engine_version: ENGINE_VERSION.into(),
            field: field.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            counts,
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn case(&self, name: &str) -> Option<&VerificationCase> {
        self.cases.iter().find(|c| c.name == name)
    }

    /// Plain-text rendering of the report.
    pub fn render_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        let c = &self.counts;
        let _ = writeln!(
            out,
            "{}: {} ({} pass, {} fail, {} inapplicable, {} error) over {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            c.pass,
            c.fail,
            c.inapplicable,
            c.error,
            self.field
        );
        for case in &self.cases {
            if !verbose && case.verdict == Verdict::Pass {
                continue;
            }
            let _ = write!(
                out,
                "  {:<12} {}  lhs={} rhs={}",
                case.verdict.to_string(),
                case.name,
                case.lhs.as_deref().unwrap_or("-"),
                case.rhs.as_deref().unwrap_or("-")
            );
            if let Some(r) = &case.reason {
                let _ = write!(out, "  ({r})");
            }
            out.push('\n');
        }
        out
    }
}

/// Wall-clock data, kept apart from the deterministic report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub wall_ms: f64,
    /// Per case, in report order.
    pub case_wall_ms: Vec<f64>,
}

/// What goes into `<suite>.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub header: Timing,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub suite: String,
    pub status: Status,
    pub counts: Counts,
    pub file: String,
}

/// What goes into `summary.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: String,
    pub engine_version: String,
    pub field: String,
    pub status: Status,
    pub suites: Vec<SummaryEntry>,
}

impl Summary {
    pub fn new(field: &str, reports: &[&VerificationReport]) -> Summary {
        let suites: Vec<SummaryEntry> = reports
            .iter()
            .map(|r| SummaryEntry {
                suite: r.suite.clone(),
                status: r.status,
                counts: r.counts.clone(),
                file: format!("{}.json", r.suite),
            })
            .collect();
        let ok = suites.iter().all(|s| s.status == Status::Pass);
        Summary {
            schema: SCHEMA.into(),
            engine_version: ENGINE_VERSION.into(),
            field: field.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            suites,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot write {path}: {source}")]
pub struct WriteError {
    pub path: PathBuf,
    pub source: std::io::Error,
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), WriteError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| WriteError {
        path: path.to_path_buf(),
        source,
    })
}

pub fn ensure_dir(dir: &Path) -> Result<(), WriteError> {
    std::fs::create_dir_all(dir).map_err(|source| WriteError {
        path: dir.to_path_buf(),
        source,
    })
}
