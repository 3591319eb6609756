//! Verdict records, run manifests, and the JSON/CSV emitters shared by the
//! CLI and the verification suites.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verification verdict: which identity or bound ran, on what
/// instantiation, and how much room was left.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub lemma_id: String,
    pub instantiation_hash: String,
    pub status: Status,
    /// Exact-identity checks report the residual (0 when pass); bound checks
    /// report the remaining slack. Skipped checks report NaN.
    pub residual_or_slack: f64,
    pub seed: u64,
}

impl VerdictRecord {
    pub fn new(lemma_id: &str, instantiation: &str, status: Status, residual_or_slack: f64, seed: u64) -> Self {
        VerdictRecord {
            lemma_id: lemma_id.to_string(),
            instantiation_hash: hash_instantiation(instantiation),
            status,
            residual_or_slack,
            seed,
        }
    }

    pub fn pass(lemma_id: &str, instantiation: &str, slack: f64, seed: u64) -> Self {
        Self::new(lemma_id, instantiation, Status::Pass, slack, seed)
    }

    pub fn fail(lemma_id: &str, instantiation: &str, residual: f64, seed: u64) -> Self {
        Self::new(lemma_id, instantiation, Status::Fail, residual, seed)
    }

    pub fn skipped(lemma_id: &str, instantiation: &str, seed: u64) -> Self {
        Self::new(lemma_id, instantiation, Status::Skipped, f64::NAN, seed)
    }

    pub fn of_check(lemma_id: &str, instantiation: &str, ok: bool, value: f64, seed: u64) -> Self {
        if ok {
            Self::pass(lemma_id, instantiation, value, seed)
        } else {
            Self::fail(lemma_id, instantiation, value, seed)
        }
    }
}

pub fn hash_instantiation(description: &str) -> String {
    let mut h = Sha256::new();
    h.update(description.as_bytes());
    let out: [u8; 32] = h.finalize().into();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// A whole verification run. Serialization is deterministic: no timestamps,
/// records in execution order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub records: Vec<VerdictRecord>,
}

impl Manifest {
    pub fn new(suite: &str, seed: u64, records: Vec<VerdictRecord>) -> Self {
        let passed = records.iter().filter(|r| r.status == Status::Pass).count();
        let failed = records.iter().filter(|r| r.status == Status::Fail).count();
        let skipped = records.iter().filter(|r| r.status == Status::Skipped).count();
        Manifest { suite: suite.to_string(), seed, passed, failed, skipped, records }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .map(|r| r.lemma_id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_json().as_bytes())?;
        f.write_all(b"\n")?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        for r in &self.records {
            w.serialize(r).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A protocol-advantage experiment record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub spec_hash: String,
    pub protocol_name: String,
    pub mode: String,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl ExperimentRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, format!("{}\n", self.to_json()))?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        w.serialize(self).map_err(csv_err)?;
        w.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> crate::error::Error {
    crate::error::Error::Parse(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_counts_and_determinism() {
        let records = vec![
            VerdictRecord::pass("a", "x", 1.0, 7),
            VerdictRecord::fail("b", "y", 0.5, 7),
            VerdictRecord::skipped("c", "z", 7),
        ];
        let m1 = Manifest::new("all", 7, records.clone());
        let m2 = Manifest::new("all", 7, records);
        assert_eq!(m1.passed, 1);
        assert_eq!(m1.failed, 1);
        assert_eq!(m1.skipped, 1);
        assert!(!m1.all_pass());
        assert_eq!(m1.to_json(), m2.to_json());
        assert_eq!(m1.failing_ids(), vec!["b"]);
    }
}
