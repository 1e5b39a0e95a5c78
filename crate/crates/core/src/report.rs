//! Shared verification-report schema.
//!
//! Every suite in this crate reduces to the same shape: a list of named
//! checks, each with the law it tests, the worst residual observed, the
//! tolerance it was held to, and how many instances were skipped for failing
//! a side condition. Skipped instances never count as passes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One verified law inside a suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Stable identifier, e.g. "conditional.self-unity".
    pub id: String,
    /// The law being checked, stated as a formula.
    pub statement: String,
    /// Worst residual across all non-skipped instances.
    pub max_residual: f64,
    /// Residual bound the check is held to.
    pub tolerance: f64,
    /// True exactly when max_residual ≤ tolerance.
    pub pass: bool,
    /// Instances skipped because a side condition failed.
    pub skipped: u64,
}

impl CheckRecord {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        max_residual: f64,
        tolerance: f64,
        skipped: u64,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            statement: statement.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            skipped,
        }
    }
}

/// Structured result of a verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub suite: String,
    /// Number of instances the suite evaluated (excluding skipped ones).
    pub instances: u64,
    pub checks: Vec<CheckRecord>,
    /// Seed the run was driven by, when randomized.
    pub seed: Option<u64>,
    /// Echo of the configuration, for reproduction.
    pub config: BTreeMap<String, String>,
    /// Hypothesis or degeneracy notes that do not fail the run.
    pub warnings: Vec<String>,
}

impl AxiomReport {
    pub fn new(suite: impl Into<String>) -> Self {
        AxiomReport {
            suite: suite.into(),
            instances: 0,
            checks: Vec::new(),
            seed: None,
            config: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn config_entry(&mut self, key: impl Into<String>, value: impl ToString) {
        self.config.insert(key.into(), value.to_string());
    }

    pub fn push_check(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn warn(&mut self, note: impl Into<String>) {
        self.warnings.push(note.into());
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Largest residual across all checks.
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::error::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::error::Error::Serialization(e.to_string()))
    }
}

/// Tracks the worst residual of one law across many instances.
#[derive(Debug, Clone)]
pub struct ResidualTracker {
    max: f64,
    count: u64,
    skipped: u64,
}

impl ResidualTracker {
    pub fn new() -> Self {
        ResidualTracker {
            max: 0.0,
            count: 0,
            skipped: 0,
        }
    }

    pub fn record(&mut self, residual: f64) {
        self.max = self.max.max(residual);
        self.count += 1;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    pub fn into_check(
        self,
        id: impl Into<String>,
        statement: impl Into<String>,
        tolerance: f64,
    ) -> CheckRecord {
        CheckRecord::new(id, statement, self.max, tolerance, self.skipped)
    }
}

impl Default for ResidualTracker {
    fn default() -> Self {
        Self::new()
    }
}

/// Formats a float with 17 significant digits, enough to round-trip f64.
pub fn format_f64_full(x: f64) -> String {
    format!("{:.16e}", x)
}
