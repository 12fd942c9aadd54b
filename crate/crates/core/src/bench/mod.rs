//! Experiment harness: repeated trials, percentage gaps, result tables and
//! performance profiles.

mod gap;
mod profile;
mod stats;
mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solve::SolveError;

pub use gap::{gap_percent, Gap};
pub use profile::{
    emit_profile_plot_data, performance_profile, profile_from_stats, PerfProfile, ProfileMetric,
};
pub use stats::{fill_session_references, run_trials, Run, RunStats};
pub use table::{render_csv, render_table};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("reference cost must be positive, got {0}")]
    ZeroReference(i64),
    #[error("at least one run is required")]
    NoRuns,
    #[error("metric for {algorithm} on {instance} is {value}; profiles need positive values")]
    NonPositiveMetric {
        algorithm: String,
        instance: String,
        value: f64,
    },
    #[error("no result for {algorithm} on {instance}")]
    MissingResult { algorithm: String, instance: String },
    #[error("{0}")]
    Shape(String),
    #[error("manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },
    #[error("results archive: {0}")]
    Archive(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// One benchmark instance: a file path and an optional known optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: String,
    pub reference: Option<i64>,
}

/// Parses a manifest: one `path [reference]` per line; `#` starts a comment.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, BenchError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let path = parts.next().expect("nonempty line").to_string();
        let reference = match parts.next() {
            None => None,
            Some(r) => Some(r.parse::<i64>().map_err(|e| BenchError::Manifest {
                line: i + 1,
                msg: format!("bad reference {r:?}: {e}"),
            })?),
        };
        if parts.next().is_some() {
            return Err(BenchError::Manifest {
                line: i + 1,
                msg: "expected `path [reference]`".into(),
            });
        }
        out.push(ManifestEntry { path, reference });
    }
    Ok(out)
}

/// JSON document written by `bench` and read by `profile`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsArchive {
    pub stats: Vec<RunStats>,
}

impl ResultsArchive {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("archive serializes")
    }

    /// Parses an archive and recomputes every derived field from the raw runs.
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let mut a: ResultsArchive =
            serde_json::from_str(text).map_err(|e| BenchError::Archive(e.to_string()))?;
        for s in &mut a.stats {
            if s.runs.is_empty() {
                return Err(BenchError::Archive(format!(
                    "{} / {} has no runs",
                    s.instance, s.algorithm
                )));
            }
            let r = s.reference;
            s.set_reference(r)?;
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let m = parse_manifest("# set 1\ndata/a.gtsp 23671\n\n data/b.gtsp  # unknown\n").unwrap();
        assert_eq!(
            m,
            vec![
                ManifestEntry {
                    path: "data/a.gtsp".into(),
                    reference: Some(23671)
                },
                ManifestEntry {
                    path: "data/b.gtsp".into(),
                    reference: None
                },
            ]
        );
        assert!(matches!(
            parse_manifest("a x"),
            Err(BenchError::Manifest { line: 1, .. })
        ));
    }

    #[test]
    fn archive_round_trip() {
        let runs = vec![Run {
            seed: 1,
            cost: 10,
            seconds: 0.1,
            feasible: true,
        }];
        let a = ResultsArchive {
            stats: vec![RunStats::new("i", "a", runs, Some(8)).unwrap()],
        };
        let back = ResultsArchive::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert!(ResultsArchive::from_json("{").is_err());
    }
}
