//! Machine-readable verification reports.
//!
//! One [`VerificationReport`] per checked claim. The struct field order is
//! the canonical serialization order; the CLI emits the same fields in the
//! same order for JSON, CSV and the text table.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Skipped => write!(f, "skipped"),
        }
    }
}

/// Witness for a failed claim.
#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// Progression counter of the failing term.
    pub n: u64,
    /// Series index, step * n + offset.
    pub index: u64,
    /// Offending value: the residue for modular claims, or the coefficient
    /// difference for exact identities (saturated to the i128 range).
    pub value: i128,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub label: String,
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub step: u64,
    pub offset: u64,
    /// 0 denotes the exact ring.
    pub modulus: u64,
    pub terms_checked: u64,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    /// Wall-clock milliseconds. Zeroed in CLI output unless timings were
    /// requested, so that reruns are byte-identical.
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Convenience constructor for parameter maps.
pub fn params_from(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}
