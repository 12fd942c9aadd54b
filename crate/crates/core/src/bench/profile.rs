//! Dolan–Moré performance profiles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::stats::RunStats;
use super::BenchError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerfProfile {
    pub algorithms: Vec<String>,
    pub instances: Vec<String>,
    /// `metrics[s][p]` for algorithm `s` on instance `p`.
    pub metrics: Vec<Vec<f64>>,
    /// `ratios[s][p] = metrics[s][p] / min_a metrics[a][p]`.
    pub ratios: Vec<Vec<f64>>,
    /// Per algorithm, `(tau, rho)` at each distinct ratio, ascending.
    pub breakpoints: Vec<Vec<(f64, f64)>>,
}

impl PerfProfile {
    /// `rho_s(tau)`: fraction of instances with `r_{s,p} <= tau`.
    pub fn rho(&self, s: usize, tau: f64) -> f64 {
        let hit = self.ratios[s].iter().filter(|&&r| r <= tau).count();
        hit as f64 / self.instances.len() as f64
    }

    /// Largest ratio over all algorithms and instances.
    pub fn tau_max(&self) -> f64 {
        self.ratios.iter().flatten().copied().fold(1.0, f64::max)
    }

    /// Plotting series for algorithm `s`: starts at `tau = 1`, ends at
    /// `(tau_max, 1)`.
    pub fn series(&self, s: usize) -> Vec<(f64, f64)> {
        let mut pts = vec![(1.0, self.rho(s, 1.0))];
        pts.extend(
            self.breakpoints[s]
                .iter()
                .copied()
                .filter(|&(t, _)| t > 1.0),
        );
        let tau_max = self.tau_max();
        if pts.len() == 1 || pts.last().is_some_and(|&(t, _)| t < tau_max) {
            pts.push((tau_max, 1.0));
        }
        pts
    }
}

/// Builds the profile of `metrics[s][p]`. All values must be positive.
pub fn performance_profile(
    algorithms: Vec<String>,
    instances: Vec<String>,
    metrics: Vec<Vec<f64>>,
) -> Result<PerfProfile, BenchError> {
    if algorithms.is_empty() || instances.is_empty() {
        return Err(BenchError::Shape(
            "need at least one algorithm and one instance".into(),
        ));
    }
    if metrics.len() != algorithms.len() || metrics.iter().any(|row| row.len() != instances.len()) {
        return Err(BenchError::Shape(format!(
            "metric matrix must be {} x {}",
            algorithms.len(),
            instances.len()
        )));
    }
    for (s, row) in metrics.iter().enumerate() {
        for (p, &v) in row.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(BenchError::NonPositiveMetric {
                    algorithm: algorithms[s].clone(),
                    instance: instances[p].clone(),
                    value: v,
                });
            }
        }
    }
    let np = instances.len();
    let best: Vec<f64> = (0..np)
        .map(|p| {
            metrics
                .iter()
                .map(|row| row[p])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let ratios: Vec<Vec<f64>> = metrics
        .iter()
        .map(|row| row.iter().zip(&best).map(|(v, b)| v / b).collect())
        .collect();
    let breakpoints = ratios
        .iter()
        .map(|row| {
            let mut sorted = row.clone();
            sorted.sort_by(f64::total_cmp);
            let mut pts: Vec<(f64, f64)> = Vec::new();
            for (i, &r) in sorted.iter().enumerate() {
                let rho = (i + 1) as f64 / np as f64;
                match pts.last_mut() {
                    Some(last) if last.0 == r => last.1 = rho,
                    _ => pts.push((r, rho)),
                }
            }
            pts
        })
        .collect();
    Ok(PerfProfile {
        algorithms,
        instances,
        metrics,
        ratios,
        breakpoints,
    })
}

/// Which quantity of a [`RunStats`] feeds the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileMetric {
    /// Average cost over runs.
    Cost,
    /// Average cost divided by the reference, i.e. `1 + gap_avg / 100`.
    NormalizedCost,
    /// Average wall time, floored at one millisecond.
    Time,
}

impl std::str::FromStr for ProfileMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cost" => Ok(ProfileMetric::Cost),
            "gap" | "normalized" => Ok(ProfileMetric::NormalizedCost),
            "time" => Ok(ProfileMetric::Time),
            other => Err(format!("unknown metric {other:?}")),
        }
    }
}

/// Arranges stats into a profile; every algorithm must cover every instance.
pub fn profile_from_stats(
    stats: &[RunStats],
    metric: ProfileMetric,
) -> Result<PerfProfile, BenchError> {
    let mut table: BTreeMap<(&str, &str), &RunStats> = BTreeMap::new();
    for s in stats {
        table.insert((&s.algorithm, &s.instance), s);
    }
    let mut algorithms: Vec<String> = stats.iter().map(|s| s.algorithm.clone()).collect();
    algorithms.sort();
    algorithms.dedup();
    let mut instances: Vec<String> = stats.iter().map(|s| s.instance.clone()).collect();
    instances.sort();
    instances.dedup();
    let mut metrics = Vec::with_capacity(algorithms.len());
    for a in &algorithms {
        let mut row = Vec::with_capacity(instances.len());
        for p in &instances {
            let s =
                table
                    .get(&(a.as_str(), p.as_str()))
                    .ok_or_else(|| BenchError::MissingResult {
                        algorithm: a.clone(),
                        instance: p.clone(),
                    })?;
            row.push(match metric {
                ProfileMetric::Cost => s.mean_cost(),
                ProfileMetric::Time => s.mean_seconds().max(0.001),
                ProfileMetric::NormalizedCost => match s.reference {
                    Some(r) if r > 0 => s.mean_cost() / r as f64,
                    _ => return Err(BenchError::ZeroReference(s.reference.unwrap_or(0))),
                },
            });
        }
        metrics.push(row);
    }
    performance_profile(algorithms, instances, metrics)
}

/// CSV rows `algorithm,tau,rho` for every algorithm's series.
pub fn emit_profile_plot_data(profile: &PerfProfile) -> String {
    let mut out = String::from("algorithm,tau,rho\n");
    for (s, name) in profile.algorithms.iter().enumerate() {
        for (t, r) in profile.series(s) {
            let _ = writeln!(out, "{name},{t},{r}");
        }
    }
    out
}
