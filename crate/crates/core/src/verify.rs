//! Outcome of a single identity check.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypotheses of the identity do not hold for this input.
    Inapplicable,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Error => "error",
        };
        f.write_str(s)
    }
}

/// Both sides of an identity, rendered exactly, and the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub name: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl VerificationCase {
    /// Pass iff the rendered sides agree.
    pub fn compare(name: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
        VerificationCase {
            name: name.into(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            verdict,
            reason: None,
        }
    }

    pub fn inapplicable(name: impl Into<String>, reason: impl Into<String>) -> Self {
        VerificationCase {
            name: name.into(),
            lhs: None,
            rhs: None,
            verdict: Verdict::Inapplicable,
            reason: Some(reason.into()),
        }
    }

    pub fn error(name: impl Into<String>, reason: impl fmt::Display) -> Self {
        VerificationCase {
            name: name.into(),
            lhs: None,
            rhs: None,
            verdict: Verdict::Error,
            reason: Some(reason.to_string()),
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
