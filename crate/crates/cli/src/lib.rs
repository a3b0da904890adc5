//! Suite runner and example zoo for `nctrace`.

pub mod report;
pub mod suites;
pub mod zoo;

pub use report::{ReportFile, Summary, VerificationReport};
pub use suites::{run_suite, Config, Suite};
pub use zoo::{Zoo, ZooEntry};
