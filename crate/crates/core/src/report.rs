//! Verification reports and their JSON / CSV serializations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One checked unit: usually a prime, sometimes a named case (an index, a
/// shuffle) for checks that are not per prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub prime: Option<u64>,
    pub case: Option<String>,
    /// Whether this row counts toward the verdict.
    pub judged: bool,
    pub holds: bool,
    /// Number of elementary comparisons behind this row.
    pub checks: u64,
    pub detail: Option<String>,
}

impl ReportRow {
    pub fn prime(p: u64, judged: bool, holds: bool) -> Self {
        ReportRow {
            prime: Some(p),
            case: None,
            judged,
            holds,
            checks: 1,
            detail: None,
        }
    }

    pub fn case(label: impl Into<String>, holds: bool) -> Self {
        ReportRow {
            prime: None,
            case: Some(label.into()),
            judged: true,
            holds,
            checks: 1,
            detail: None,
        }
    }

    pub fn with_checks(mut self, checks: u64) -> Self {
        self.checks = checks;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Result of one verification run.
///
/// The verdict is `pass` iff no judged row fails. Rows are ordered by prime,
/// then case label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub convention: Option<String>,
    pub mode: String,
    pub seed: Option<u64>,
    pub primes: Vec<u64>,
    pub rows: Vec<ReportRow>,
    pub failures: Vec<u64>,
    pub failing_cases: Vec<String>,
    pub informational_failures: Vec<u64>,
    pub zeta_evals: u64,
    pub cache_hits: u64,
    pub cache_invalid_lines: u64,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Rows that count toward the verdict and fail.
    pub fn judged_failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.judged && !r.holds)
    }

    pub fn row_for(&self, p: u64) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.prime == Some(p))
    }

    /// Compact JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut s = serde_json::to_string(&value).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Io(format!("malformed report: {e}")))
    }

    /// One CSV line per row, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,prime,case,judged,holds,checks,detail\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_field(&self.name),
                row.prime.map(|p| p.to_string()).unwrap_or_default(),
                csv_field(row.case.as_deref().unwrap_or("")),
                row.judged,
                row.holds,
                row.checks,
                csv_field(row.detail.as_deref().unwrap_or("")),
            );
        }
        out
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Accumulates the metadata of a run, then seals rows into a report.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    name: String,
    params: BTreeMap<String, Value>,
    convention: Option<String>,
    mode: String,
    seed: Option<u64>,
    zeta_evals: u64,
    cache_hits: u64,
    cache_invalid_lines: u64,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        ReportBuilder {
            name: name.into(),
            params: BTreeMap::new(),
            convention: None,
            mode: "exact".into(),
            seed: None,
            zeta_evals: 0,
            cache_hits: 0,
            cache_invalid_lines: 0,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn convention(mut self, c: impl Into<String>) -> Self {
        self.convention = Some(c.into());
        self
    }

    pub fn mode(mut self, mode: impl Into<String>) -> Self {
        self.mode = mode.into();
        self
    }

    pub fn seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn cache_invalid_lines(mut self, n: usize) -> Self {
        self.cache_invalid_lines = n as u64;
        self
    }

    pub fn add_zeta_evals(&mut self, computed: usize, hits: usize) {
        self.zeta_evals += computed as u64;
        self.cache_hits += hits as u64;
    }

    pub fn finish(self, mut rows: Vec<ReportRow>) -> VerificationReport {
        rows.sort_by(|a, b| (a.prime, &a.case).cmp(&(b.prime, &b.case)));
        let mut primes: Vec<u64> = rows.iter().filter_map(|r| r.prime).collect();
        primes.dedup();
        let mut failures: Vec<u64> = rows
            .iter()
            .filter(|r| r.judged && !r.holds)
            .filter_map(|r| r.prime)
            .collect();
        failures.dedup();
        let failing_cases: Vec<String> = rows
            .iter()
            .filter(|r| r.judged && !r.holds && r.prime.is_none())
            .filter_map(|r| r.case.clone())
            .collect();
        let mut informational_failures: Vec<u64> = rows
            .iter()
            .filter(|r| !r.judged && !r.holds)
            .filter_map(|r| r.prime)
            .collect();
        informational_failures.dedup();
        let verdict = if failures.is_empty() && failing_cases.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            name: self.name,
            params: self.params,
            convention: self.convention,
            mode: self.mode,
            seed: self.seed,
            primes,
            rows,
            failures,
            failing_cases,
            informational_failures,
            zeta_evals: self.zeta_evals,
            cache_hits: self.cache_hits,
            cache_invalid_lines: self.cache_invalid_lines,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            verdict,
        }
    }
}
