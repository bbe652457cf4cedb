//! Batch verification: seeded fixtures, the per-identity check suites, and
//! machine-readable reports. This is the library surface behind the
//! `sigma-verify` binary.
//!
//! Reports are deterministic: fixed config in, byte-identical JSON out
//! (except the `wall_ms` field). Entries are merged in a canonical order
//! (anchor, then name) and every entry names the identity tag it verifies,
//! so a report doubles as a coverage map of the calculus.

pub mod demos;
pub mod fixtures;
mod suites;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use demos::{expand_lines, ks_demo, ww_nogo_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Algebra,
    Maps,
    Leibniz,
    Dynamics,
    Quasinil,
}

impl SuiteName {
    pub fn all() -> Vec<SuiteName> {
        vec![
            SuiteName::Algebra,
            SuiteName::Maps,
            SuiteName::Leibniz,
            SuiteName::Dynamics,
            SuiteName::Quasinil,
        ]
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Maps => "maps",
            SuiteName::Leibniz => "leibniz",
            SuiteName::Dynamics => "dynamics",
            SuiteName::Quasinil => "quasinil",
        };
        f.write_str(s)
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<SuiteName> {
        match s {
            "algebra" => Ok(SuiteName::Algebra),
            "maps" => Ok(SuiteName::Maps),
            "leibniz" => Ok(SuiteName::Leibniz),
            "dynamics" => Ok(SuiteName::Dynamics),
            "quasinil" => Ok(SuiteName::Quasinil),
            other => Err(Error::InvalidConfig(format!(
                "unknown suite `{other}` (expected algebra|maps|leibniz|dynamics|quasinil)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub matrix_dim: usize,
    pub grid_size: usize,
    pub tol: f64,
    pub trials: u64,
    pub n_max: usize,
    pub suites: Vec<SuiteName>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            matrix_dim: 3,
            grid_size: 8,
            tol: 1e-9,
            trials: 50,
            n_max: 8,
            suites: SuiteName::all(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.matrix_dim) {
            return Err(Error::InvalidConfig(
                "matrix dim must be in 2..=8 (desk scale: keeps basis-pair \
                 exhaustion and the commutant loops affordable)"
                    .into(),
            ));
        }
        if !self.grid_size.is_power_of_two() {
            return Err(Error::InvalidConfig(
                "grid size must be a power of two (the doubling fixture needs it)".into(),
            ));
        }
        if self.grid_size > 64 {
            return Err(Error::InvalidConfig(
                "grid size must be ≤ 64 (desk scale: keeps basis-pair \
                 exhaustion and the commutant loops affordable)"
                    .into(),
            ));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        if self.n_max == 0 || self.n_max > 16 {
            return Err(Error::InvalidConfig("n_max must be in 1..=16".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidConfig("at least one suite required".into()));
        }
        Ok(())
    }
}

/// One verification outcome inside a report: a named check, the identity tag
/// it covers, its residual against a pinned threshold, and (optionally) the
/// inputs that achieved the residual.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub anchor: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub witness: Option<Value>,
    pub trials: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub entries: Vec<SuiteEntry>,
    pub overall_pass: bool,
    pub wall_ms: u64,
}

impl SuiteReport {
    fn assemble(config: SuiteConfig, mut entries: Vec<SuiteEntry>, started: Instant) -> Self {
        entries.sort_by(|a, b| (&a.anchor, &a.name).cmp(&(&b.anchor, &b.name)));
        let overall_pass = entries.iter().all(|e| e.pass);
        SuiteReport {
            config,
            entries,
            overall_pass,
            wall_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table mirroring the JSON entries.
    pub fn render_table(&self) -> String {
        let name_width = self
            .entries
            .iter()
            .map(|e| e.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = String::new();
        out.push_str(&format!(
            "{:<name_width$}  {:<12}  {:>12}  {:>12}  {}\n",
            "name", "anchor", "residual", "threshold", "pass"
        ));
        for e in &self.entries {
            out.push_str(&format!(
                "{:<name_width$}  {:<12}  {:>12.3e}  {:>12.3e}  {}\n",
                e.name,
                e.anchor,
                e.residual,
                e.threshold,
                if e.pass { "ok" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "overall: {} ({} entries, {} ms)\n",
            if self.overall_pass { "pass" } else { "FAIL" },
            self.entries.len(),
            self.wall_ms
        ));
        out
    }
}

fn value_entry(
    anchor: &str,
    name: &str,
    residual: f64,
    threshold: f64,
    witness: Option<Value>,
    trials: u64,
) -> SuiteEntry {
    SuiteEntry {
        name: name.to_string(),
        anchor: anchor.to_string(),
        pass: residual <= threshold,
        residual,
        threshold,
        witness,
        trials,
    }
}

/// A check that must *exceed* a bound (non-endomorphism, nonzero gap):
/// recorded as residual = bound − measured against threshold 0.
fn exceed_entry(
    anchor: &str,
    name: &str,
    measured: f64,
    bound: f64,
    witness: Option<Value>,
) -> SuiteEntry {
    value_entry(anchor, name, bound - measured, 0.0, witness, 1)
}

fn bool_entry(anchor: &str, name: &str, ok: bool, witness: Option<Value>) -> SuiteEntry {
    value_entry(anchor, name, if ok { 0.0 } else { 1.0 }, 0.0, witness, 1)
}

fn report_entry(anchor: &str, name: &str, report: crate::maps::CheckReport) -> SuiteEntry {
    SuiteEntry {
        name: name.to_string(),
        anchor: anchor.to_string(),
        residual: report.max_residual,
        threshold: report.threshold,
        pass: report.pass,
        witness: report.witness,
        trials: report.trials,
    }
}

/// Run the configured suites and assemble the deterministic report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut entries = Vec::new();
    for suite in &cfg.suites {
        let batch = match suite {
            SuiteName::Algebra => suites::algebra_suite(cfg)?,
            SuiteName::Maps => suites::maps_suite(cfg)?,
            SuiteName::Leibniz => suites::leibniz_suite(cfg)?,
            SuiteName::Dynamics => suites::dynamics_suite(cfg)?,
            SuiteName::Quasinil => suites::quasinil_suite(cfg)?,
        };
        entries.extend(batch);
    }
    Ok(SuiteReport::assemble(cfg.clone(), entries, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        SuiteConfig::default().validate().unwrap();
    }

    #[test]
    fn config_rejects_non_power_of_two_grid() {
        let cfg = SuiteConfig {
            grid_size: 6,
            ..SuiteConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for name in SuiteName::all() {
            assert_eq!(name.to_string().parse::<SuiteName>().unwrap(), name);
        }
        assert!("bogus".parse::<SuiteName>().is_err());
    }

    #[test]
    fn entries_are_sorted_canonically() {
        let cfg = SuiteConfig {
            suites: vec![SuiteName::Quasinil, SuiteName::Algebra],
            trials: 5,
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        let keys: Vec<(String, String)> = report
            .entries
            .iter()
            .map(|e| (e.anchor.clone(), e.name.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
