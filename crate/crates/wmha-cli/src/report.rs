//! JSON report documents.
//!
//! JSON output is the machine contract: the same command on the same inputs
//! with the same seed serializes byte-identically. Wall-clock timings are
//! therefore printed only in the human-oriented text output, never in JSON.

use std::collections::BTreeMap;

use serde::Serialize;
use wmha_core::duality::DualityReport;
use wmha_core::report::{CheckReport, SuiteReport};
use wmha_core::groupoid::ValidationReport;

#[derive(Serialize)]
pub struct JsonCheck {
    pub axiom: String,
    pub status: String,
    pub witnesses: Vec<String>,
}

impl From<&CheckReport> for JsonCheck {
    fn from(check: &CheckReport) -> Self {
        JsonCheck {
            axiom: check.axiom.as_str().to_string(),
            status: check.status.as_str().to_string(),
            witnesses: check.witnesses.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct JsonDuality {
    pub dim_bismash: usize,
    pub dim_rhs: usize,
    pub spans_equal: bool,
    pub iso_verified: bool,
    pub witnesses: Vec<String>,
}

impl From<&DualityReport> for JsonDuality {
    fn from(r: &DualityReport) -> Self {
        JsonDuality {
            dim_bismash: r.dim_bismash,
            dim_rhs: r.dim_rhs,
            spans_equal: r.spans_equal,
            iso_verified: r.iso_verified,
            witnesses: r.witnesses.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct JsonViolation {
    pub rule: String,
    pub witness: String,
}

#[derive(Serialize)]
pub struct JsonFixture {
    pub name: String,
    pub kind: String,
    pub description: String,
}

/// The top-level report document.
#[derive(Serialize)]
pub struct JsonReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub seed: u64,
    pub budget: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<JsonCheck>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<JsonViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<JsonDuality>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fixtures: Vec<JsonFixture>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub integrals: Vec<String>,
    pub overall: String,
}

impl JsonReport {
    pub fn new(command: &str, seed: u64, budget: usize) -> Self {
        JsonReport {
            command: command.to_string(),
            fixture: None,
            input: None,
            seed,
            budget,
            checks: Vec::new(),
            dimensions: BTreeMap::new(),
            violations: Vec::new(),
            duality: None,
            fixtures: Vec::new(),
            integrals: Vec::new(),
            overall: "pass".to_string(),
        }
    }

    pub fn add_suite(&mut self, suite: &SuiteReport) {
        for check in &suite.checks {
            self.checks.push(JsonCheck::from(check));
        }
        if !suite.is_pass() {
            self.overall = "fail".to_string();
        }
    }

    pub fn add_check(&mut self, check: &CheckReport) {
        if !check.is_ok() {
            self.overall = "fail".to_string();
        }
        self.checks.push(JsonCheck::from(check));
    }

    pub fn add_validation(&mut self, report: &ValidationReport) {
        for v in &report.violations {
            self.violations.push(JsonViolation {
                rule: v.rule.clone(),
                witness: v.witness.clone(),
            });
        }
        if !report.is_valid() {
            self.overall = "fail".to_string();
        }
    }

    pub fn set_duality(&mut self, report: &DualityReport) {
        if !report.is_pass() {
            self.overall = "fail".to_string();
        }
        self.duality = Some(JsonDuality::from(report));
    }

    pub fn dimension(&mut self, key: &str, value: usize) {
        self.dimensions.insert(key.to_string(), value);
    }

    pub fn is_pass(&self) -> bool {
        self.overall == "pass"
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable report");
        out.push('\n');
        out
    }
}
