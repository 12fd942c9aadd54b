use std::time::Instant;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::distance::{Cached, Distance};
use crate::localsearch::{build_candidate_lists, construct_improved, DEFAULT_CANDIDATES};
use crate::rng;
use crate::tour::Tour;

use super::crossover::Crossover;
use super::cycles::EsetStrategy;
use super::EaxError;

const TAG_INIT: u64 = 0x1417;
const TAG_SHUFFLE: u64 = 0x5348;
const TAG_PAIR: u64 = 0x5041;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    /// Population size `p`.
    pub population: usize,
    /// Offspring per parent pair `r`.
    pub offspring: usize,
    pub strategy: EsetStrategy,
    /// Stop once average minus best population cost drops below this.
    pub termination_epsilon: f64,
    pub max_generations: usize,
    pub seed: u64,
    /// Candidate list size for local search and subtour merging.
    pub candidates: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 300,
            offspring: 30,
            strategy: EsetStrategy::Single,
            termination_epsilon: 0.001,
            max_generations: 3000,
            seed: 1,
            candidates: DEFAULT_CANDIDATES,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), EaxError> {
        let bad = |msg: &str| Err(EaxError::InvalidConfig(msg.to_string()));
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if self.offspring < 1 {
            return bad("offspring must be at least 1");
        }
        if !(self.termination_epsilon.is_finite() && self.termination_epsilon > 0.0) {
            return bad("termination_epsilon must be positive and finite");
        }
        if self.candidates < 1 {
            return bad("candidates must be at least 1");
        }
        if self.strategy == EsetStrategy::KMultiple(0) {
            return bad("k-multiple needs k >= 1");
        }
        Ok(())
    }
}

/// Population statistics after one generation (generation 0 is the initial
/// population).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    pub best: i64,
    pub average: f64,
    /// Seconds since the solve started.
    pub elapsed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// Average minus best fell below the epsilon.
    Converged,
    /// `max_generations` was reached first.
    GenerationCap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best_tour: Tour,
    pub best_cost: i64,
    pub generations: usize,
    /// Seconds.
    pub wall_time: f64,
    pub history: Vec<GenerationRecord>,
    pub termination: Termination,
}

impl SolveResult {
    /// Equality ignoring wall-clock measurements.
    pub fn same_outcome(&self, other: &SolveResult) -> bool {
        self.best_tour == other.best_tour
            && self.generations == other.generations
            && self.termination == other.termination
            && self.history.len() == other.history.len()
            && self.history.iter().zip(&other.history).all(|(a, b)| {
                a.generation == b.generation && a.best == b.best && a.average == b.average
            })
    }
}

fn stats(pop: &[Tour]) -> (usize, i64, i128) {
    let (mut at, mut best) = (0, i64::MAX);
    let mut sum: i128 = 0;
    for (i, t) in pop.iter().enumerate() {
        sum += t.cost() as i128;
        if t.cost() < best {
            best = t.cost();
            at = i;
        }
    }
    (at, best, sum)
}

/// Runs the GA and returns its best tour.
pub fn ga_solve<D: Distance + ?Sized>(d: &D, cfg: &GaConfig) -> Result<SolveResult, EaxError> {
    ga_solve_observed(d, cfg, |_| {})
}

/// [`ga_solve`], calling `observe` after every generation.
pub fn ga_solve_observed<D, F>(
    d: &D,
    cfg: &GaConfig,
    mut observe: F,
) -> Result<SolveResult, EaxError>
where
    D: Distance + ?Sized,
    F: FnMut(&GenerationRecord),
{
    cfg.validate()?;
    let start = Instant::now();
    let d = Cached::new(d);
    let n = d.len();
    if n == 0 {
        return Err(EaxError::InvalidConfig("empty instance".into()));
    }
    let p = cfg.population;

    let mut pop: Vec<Tour> = if n < 4 {
        // Every tour on at most three vertices has the same edge set.
        vec![Tour::identity(&d); p]
    } else {
        let cl = build_candidate_lists(&d, cfg.candidates);
        (0..p)
            .map(|i| construct_improved(&d, &cl, &mut rng::substream(cfg.seed, TAG_INIT, i as u64)))
            .collect()
    };
    let cl = build_candidate_lists(&d, cfg.candidates.min(n.saturating_sub(1)).max(1));

    let mut history = Vec::new();
    let mut record = |generation: usize, pop: &[Tour], history: &mut Vec<GenerationRecord>| {
        let (_, best, sum) = stats(pop);
        let rec = GenerationRecord {
            generation,
            best,
            average: sum as f64 / p as f64,
            elapsed: start.elapsed().as_secs_f64(),
        };
        observe(&rec);
        history.push(rec);
        // avg - best < eps, kept in integers on the left side.
        ((sum - best as i128 * p as i128) as f64) < cfg.termination_epsilon * p as f64
    };

    let mut converged = record(0, &pop, &mut history);
    let mut generation = 0;
    while !converged && generation < cfg.max_generations {
        generation += 1;
        pop.shuffle(&mut rng::substream(
            cfg.seed,
            TAG_SHUFFLE,
            generation as u64,
        ));
        for i in 0..p {
            let j = (i + 1) % p;
            let mut r = rng::substream(cfg.seed ^ TAG_PAIR, generation as u64, i as u64);
            let mut op = Crossover::new(&pop[i], &pop[j], &mut r);
            if let Some(child) =
                op.best_improvement(&d, &cl, &pop[i], cfg.offspring, cfg.strategy, &mut r)
            {
                debug_assert_eq!(child.cost(), crate::tour::cycle_cost(&d, child.order()));
                pop[i] = child;
            }
        }
        converged = record(generation, &pop, &mut history);
    }

    let (at, best_cost, _) = stats(&pop);
    Ok(SolveResult {
        best_tour: pop.swap_remove(at),
        best_cost,
        generations: generation,
        wall_time: start.elapsed().as_secs_f64(),
        history,
        termination: if converged {
            Termination::Converged
        } else {
            Termination::GenerationCap
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Instance, Point};

    fn pentagon() -> Instance {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 1.0),
            Point::new(12.0, 9.0),
            Point::new(5.0, 14.0),
            Point::new(-2.0, 8.0),
        ];
        Instance::from_coords("p5", pts, vec![(0..5).collect()]).unwrap()
    }

    #[test]
    fn rejects_bad_config() {
        let inst = pentagon();
        for cfg in [
            GaConfig {
                population: 1,
                ..GaConfig::default()
            },
            GaConfig {
                offspring: 0,
                ..GaConfig::default()
            },
            GaConfig {
                termination_epsilon: 0.0,
                ..GaConfig::default()
            },
        ] {
            assert!(matches!(
                ga_solve(&inst, &cfg),
                Err(EaxError::InvalidConfig(_))
            ));
        }
    }

    #[test]
    fn pentagon_converges() {
        let inst = pentagon();
        let cfg = GaConfig {
            population: 10,
            offspring: 5,
            ..GaConfig::default()
        };
        let res = ga_solve(&inst, &cfg).unwrap();
        assert_eq!(res.termination, Termination::Converged);
        assert_eq!(
            res.best_cost,
            crate::tour::cycle_cost(&inst, &[0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn tiny_instances() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(3.0, 4.0)];
        let inst = Instance::from_coords("two", pts, vec![vec![0, 1]]).unwrap();
        let res = ga_solve(
            &inst,
            &GaConfig {
                population: 4,
                ..GaConfig::default()
            },
        )
        .unwrap();
        assert_eq!(res.best_cost, 10);
        assert_eq!(res.generations, 0);
    }
}
