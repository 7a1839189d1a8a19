use serde::Serialize;
use serde_json::Value;

use crate::arith::{CycNum, ExactValue};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// not applicable to this configuration; never counts as a failure
    Skip,
    /// the computation itself raised an error
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ExactValue>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(check: &str, ok: bool, detail: impl Into<String>) -> Self {
        CheckRecord {
            check: check.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            value: None,
            detail: detail.into(),
            wall_ms: None,
        }
    }

    pub fn skip(check: &str, detail: impl Into<String>) -> Self {
        CheckRecord { status: Status::Skip, ..Self::new(check, true, detail) }
    }

    pub fn error(check: &str, err: &Error) -> Self {
        CheckRecord { status: Status::Error, ..Self::new(check, false, format!("{err:?}")) }
    }

    pub fn with_value(mut self, v: &CycNum) -> Self {
        self.value = Some(v.to_exact());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Skip)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub shape: Vec<usize>,
    pub rep: String,
    pub seed: u64,
    pub tower_levels: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: Parameters,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: &str, parameters: Parameters, checks: Vec<CheckRecord>) -> Self {
        let pass = checks.iter().all(CheckRecord::passed);
        SuiteReport { suite: suite.to_string(), parameters, checks, pass, wall_ms: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// conventions every number in the report depends on
    pub conventions: Vec<String>,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl Report {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Report { conventions: conventions(), suites, pass }
    }

    /// Canonical JSON: object keys sorted, two-space indentation.
    pub fn to_json(&self) -> Result<String> {
        let v: Value = serde_json::to_value(self).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// One row per check.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
        w.write_record(["suite", "p", "f", "shape", "rep", "check", "status", "value", "detail", "wall_ms"])
            .map_err(io)?;
        for s in &self.suites {
            let pr = &s.parameters;
            let shape = pr.shape.iter().map(usize::to_string).collect::<Vec<_>>().join("x");
            for c in &s.checks {
                let value = match &c.value {
                    Some(v) => serde_json::to_string(v).map_err(|e| Error::InvalidArgument(e.to_string()))?,
                    None => String::new(),
                };
                let status = serde_json::to_value(c.status).map_err(|e| Error::InvalidArgument(e.to_string()))?;
                w.write_record([
                    s.suite.as_str(),
                    &pr.p.to_string(),
                    &pr.f.to_string(),
                    &shape,
                    &pr.rep,
                    &c.check,
                    status.as_str().unwrap_or_default(),
                    &value,
                    &c.detail,
                    &c.wall_ms.map(|t| t.to_string()).unwrap_or_default(),
                ])
                .map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

fn conventions() -> Vec<String> {
    [
        "group actions are left actions; conjugation is x -> g x g^-1",
        "psi(x) = zeta_p^Tr(x); values are exact elements of Q(zeta_N) in the power basis",
        "twisted points satisfy t_w(i) = F(t_i); the W-action carries the sign sign_r(xi) sign_W(w)",
        "c(x) = t^n + a_1 t^(n-1) + ... + a_n",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}
