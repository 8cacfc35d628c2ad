//! Check outcomes and their JSON, TSV and text renderings.

use std::fmt::Write as _;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::config::Format;

/// Result of one residual comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Exact equality test.
    Exact { equal: bool },
    /// A residual known to vanish modulo `u^val` (`zero`), or with leading
    /// exponent `val` (`!zero`), against the budget `target`.
    Numeric { val: i64, target: i64, zero: bool },
    /// An inequality between exact norm exponents; `slack ≥ 0` holds.
    Bound { slack: i64 },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match *self {
            Outcome::Exact { equal } => equal,
            Outcome::Numeric { val, target, .. } => val >= target,
            Outcome::Bound { slack } => slack >= 0,
        }
    }

    /// The residual is zero as far as it is known, but not to the budget.
    pub fn exhausted(&self) -> bool {
        matches!(*self, Outcome::Numeric { val, target, zero: true } if val < target)
    }

    /// `None` for exact comparisons.
    pub fn margin(&self) -> Option<i64> {
        match *self {
            Outcome::Exact { .. } => None,
            Outcome::Numeric { val, target, .. } => Some(val - target),
            Outcome::Bound { slack } => Some(slack),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub label: String,
    pub outcome: Outcome,
    pub details: Vec<(String, String)>,
}

impl Sample {
    pub fn new(label: impl Into<String>, outcome: Outcome) -> Self {
        Sample {
            label: label.into(),
            outcome,
            details: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Worst margin: an integer, or `exact` when every comparison was exact.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Exact,
    Margin(i64),
}

impl Residual {
    fn render(self) -> String {
        match self {
            Residual::Exact => "exact".into(),
            Residual::Margin(m) => m.to_string(),
        }
    }
}

impl Serialize for Residual {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Residual::Exact => s.serialize_str("exact"),
            Residual::Margin(m) => s.serialize_i64(m),
        }
    }
}

impl Serialize for Sample {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("label", &self.label)?;
        let status = if self.outcome.passed() { Status::Pass } else { Status::Fail };
        m.serialize_entry("status", &status)?;
        let r = self.outcome.margin().map_or(Residual::Exact, Residual::Margin);
        m.serialize_entry("residual_valuation", &r)?;
        if let Outcome::Numeric { val, target, zero } = self.outcome {
            m.serialize_entry("valuation", &val)?;
            m.serialize_entry("budget", &target)?;
            m.serialize_entry("vanishes_to_precision", &zero)?;
        }
        for (k, v) in &self.details {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: serde_json::Value,
    pub status: Status,
    pub residual_valuation: Residual,
    pub samples: Vec<Sample>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub statement: &'static str,
}

impl CheckReport {
    pub fn from_samples(
        check: &str,
        statement: &'static str,
        params: serde_json::Value,
        samples: Vec<Sample>,
        elapsed_ms: u64,
        note: Option<String>,
    ) -> Self {
        let status = if !samples.is_empty() && samples.iter().all(|s| s.outcome.passed()) {
            Status::Pass
        } else {
            Status::Fail
        };
        let residual = samples
            .iter()
            .filter_map(|s| s.outcome.margin())
            .min()
            .map_or(Residual::Exact, Residual::Margin);
        CheckReport {
            check: check.to_string(),
            params,
            status,
            residual_valuation: residual,
            samples,
            elapsed_ms,
            note,
            statement,
        }
    }

    /// The report with `elapsed_ms` zeroed, for byte comparisons.
    pub fn normalized(&self) -> Self {
        CheckReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Renders a batch of reports.
pub fn emit(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let v = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                let statuses: Vec<_> = reports
                    .iter()
                    .map(|r| serde_json::json!({"check": r.check, "status": r.status}))
                    .collect();
                Ok(serde_json::json!({"manifest": statuses, "reports": reports}))
            };
            let mut s = serde_json::to_string_pretty(&v.expect("serializable")).expect("serializable");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::from("check\tsample\tstatus\tresidual_valuation\tdetails\n");
            for r in reports {
                for smp in &r.samples {
                    let status = if smp.outcome.passed() { "pass" } else { "fail" };
                    let res = smp.outcome.margin().map_or(Residual::Exact, Residual::Margin);
                    let det: Vec<String> = smp.details.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    writeln!(s, "{}\t{}\t{}\t{}\t{}", r.check, smp.label, status, res.render(), det.join(";")).unwrap();
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                writeln!(s, "check {}", r.check).unwrap();
                writeln!(s, "  identity: {}", r.statement).unwrap();
                writeln!(s, "  params: {}", r.params).unwrap();
                for smp in &r.samples {
                    let status = if smp.outcome.passed() { "pass" } else { "FAIL" };
                    let res = smp.outcome.margin().map_or(Residual::Exact, Residual::Margin);
                    write!(s, "  [{status}] {}: residual {}", smp.label, res.render()).unwrap();
                    for (k, v) in &smp.details {
                        write!(s, ", {k} {v}").unwrap();
                    }
                    s.push('\n');
                }
                if let Some(n) = &r.note {
                    writeln!(s, "  note: {n}").unwrap();
                }
                writeln!(
                    s,
                    "  status {}, residual_valuation {}, {} ms\n",
                    r.status.as_str().to_uppercase(),
                    r.residual_valuation.render(),
                    r.elapsed_ms
                )
                .unwrap();
            }
            s
        }
    }
}
