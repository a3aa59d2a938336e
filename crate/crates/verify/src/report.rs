//! JSON reports. Field order is fixed by the struct layout, so two runs with
//! the same configuration differ only in runtimes and the timestamp.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Timeout,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub runtime_ms: f64,
    /// Normal form, counterexample or error text; absent on a clean pass.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub timeout: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunParameters {
    pub prime: u64,
    pub seeds: Vec<u64>,
    pub groebner_steps: u64,
    pub degree_cap: usize,
    pub retries: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: RunParameters,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
    pub generated_at_unix: u64,
}

impl Report {
    pub fn new(suite: &str, parameters: RunParameters, checks: Vec<CheckRecord>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            timeout: count(Status::Timeout),
        };
        let generated_at_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            suite: suite.to_string(),
            parameters,
            summary,
            checks,
            generated_at_unix,
        }
    }

    /// 0 when everything passed, 2 on any failure, 3 on timeouts only.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            2
        } else if self.summary.timeout > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn write_atomic(&self, path: &Path) -> Result<(), HarnessError> {
        let io = |source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        };
        let json = self.to_json()?;
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => std::path::PathBuf::from("."),
        };
        std::fs::create_dir_all(&dir).map_err(io)?;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
        let mut f = std::fs::File::create(&tmp).map_err(io)?;
        f.write_all(json.as_bytes()).map_err(io)?;
        f.write_all(b"\n").map_err(io)?;
        f.sync_all().map_err(io)?;
        drop(f);
        std::fs::rename(&tmp, path).map_err(io)
    }
}
