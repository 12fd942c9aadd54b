use serde::{Deserialize, Serialize};

use crate::instance::Instance;
use crate::solve::{solve_with, Algorithm};

use super::gap::{gap_of_mean, Gap};
use super::BenchError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Run {
    pub seed: u64,
    pub cost: i64,
    pub seconds: f64,
    pub feasible: bool,
}

/// Results of repeated runs of one algorithm on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub instance: String,
    pub algorithm: String,
    pub runs: Vec<Run>,
    pub reference: Option<i64>,
    pub gap_best: Option<Gap>,
    pub gap_avg: Option<Gap>,
    /// Runs whose cost equals the reference.
    pub hits: usize,
}

impl RunStats {
    pub fn new(
        instance: impl Into<String>,
        algorithm: impl Into<String>,
        runs: Vec<Run>,
        reference: Option<i64>,
    ) -> Result<Self, BenchError> {
        if runs.is_empty() {
            return Err(BenchError::NoRuns);
        }
        let mut s = RunStats {
            instance: instance.into(),
            algorithm: algorithm.into(),
            runs,
            reference: None,
            gap_best: None,
            gap_avg: None,
            hits: 0,
        };
        s.set_reference(reference)?;
        Ok(s)
    }

    /// Recomputes every derived field against `reference`.
    pub fn set_reference(&mut self, reference: Option<i64>) -> Result<(), BenchError> {
        self.reference = reference;
        match reference {
            None => {
                self.gap_best = None;
                self.gap_avg = None;
                self.hits = 0;
            }
            Some(r) => {
                let sum: i128 = self.runs.iter().map(|x| x.cost as i128).sum();
                self.gap_best = Some(gap_of_mean(self.best() as i128, 1, r)?);
                self.gap_avg = Some(gap_of_mean(sum, self.runs.len() as i128, r)?);
                self.hits = self.runs.iter().filter(|x| x.cost == r).count();
            }
        }
        Ok(())
    }

    pub fn best(&self) -> i64 {
        self.runs
            .iter()
            .map(|r| r.cost)
            .min()
            .expect("runs nonempty")
    }

    pub fn mean_cost(&self) -> f64 {
        self.runs.iter().map(|r| r.cost as f64).sum::<f64>() / self.runs.len() as f64
    }

    pub fn mean_seconds(&self) -> f64 {
        self.runs.iter().map(|r| r.seconds).sum::<f64>() / self.runs.len() as f64
    }

    pub fn all_feasible(&self) -> bool {
        self.runs.iter().all(|r| r.feasible)
    }
}

/// Runs `algo` `n_runs` times with seeds `base_seed + i`.
pub fn run_trials(
    inst: &Instance,
    algo: &Algorithm,
    n_runs: usize,
    base_seed: u64,
    reference: Option<i64>,
) -> Result<RunStats, BenchError> {
    if n_runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let mut runs = Vec::with_capacity(n_runs);
    for i in 0..n_runs {
        let seed = base_seed + i as u64;
        let sol = solve_with(inst, &algo.with_seed(seed), |_| {})?;
        runs.push(Run {
            seed,
            cost: sol.cost,
            seconds: sol.wall_time,
            feasible: sol.feasible,
        });
    }
    RunStats::new(inst.name(), algo.name(), runs, reference)
}

/// Gives every stats entry without a reference the best cost found on its
/// instance across all entries.
pub fn fill_session_references(stats: &mut [RunStats]) -> Result<(), BenchError> {
    let mut best: std::collections::BTreeMap<String, i64> = Default::default();
    for s in stats.iter() {
        let b = best.entry(s.instance.clone()).or_insert(i64::MAX);
        *b = (*b).min(s.best());
    }
    for s in stats.iter_mut() {
        if s.reference.is_none() {
            let r = best[&s.instance];
            s.set_reference(Some(r))?;
        }
    }
    Ok(())
}
