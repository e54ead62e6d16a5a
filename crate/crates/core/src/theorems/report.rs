use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// What a check ran on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceInfo {
    pub label: String,
    pub q: Option<u64>,
    pub n: Option<usize>,
    pub d: Option<usize>,
}

/// Outcome of one catalogue check. A failed report names every violated
/// clause in `violations`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub theorem_id: String,
    pub instance: InstanceInfo,
    pub passed: bool,
    pub numbers: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    pub caveats: Vec<String>,
    pub violations: Vec<String>,
}

/// Accumulates a report; `passed` is derived from the recorded violations.
pub(crate) struct ReportBuilder {
    report: VerdictReport,
}

impl ReportBuilder {
    pub fn new(id: &str, instance: InstanceInfo) -> Self {
        ReportBuilder {
            report: VerdictReport {
                theorem_id: id.to_string(),
                instance,
                passed: true,
                numbers: BTreeMap::new(),
                witnesses: BTreeMap::new(),
                caveats: Vec::new(),
                violations: Vec::new(),
            },
        }
    }

    pub fn num(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.report
            .numbers
            .insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn witness(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.report
            .witnesses
            .insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn caveat(&mut self, text: impl Into<String>) -> &mut Self {
        self.report.caveats.push(text.into());
        self
    }

    /// Records `clause` as violated unless `ok`.
    pub fn require(&mut self, clause: &str, ok: bool) -> bool {
        if !ok {
            self.report.violations.push(clause.to_string());
        }
        ok
    }

    /// Notes an unmet largeness hypothesis; the conclusion is still checked.
    pub fn largeness(&mut self, what: &str, met: bool) {
        if !met {
            self.caveat(format!("hypothesis {what} not met; checking the conclusion empirically"));
        }
    }

    /// Ends a check whose hypothesis fails on this instance.
    pub fn vacuous(mut self, why: &str) -> VerdictReport {
        self.caveat(format!("hypothesis not met ({why}); nothing to check"));
        self.finish()
    }

    pub fn finish(mut self) -> VerdictReport {
        self.report.passed = self.report.violations.is_empty();
        self.report
    }
}
