//! End-to-end CTSP solving through the big-M transformation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eax::{ga_solve_observed, EaxError, GaConfig, GenerationRecord, SolveResult};
use crate::instance::Instance;
use crate::localsearch::{ls_solve, LsConfig};
use crate::tour::Tour;
use crate::transform::{lift_tour, recover_cost, to_tsp, TransformError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Eax(#[from] EaxError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Algorithm {
    Eax(GaConfig),
    LocalSearch(LsConfig),
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Eax(_) => "GA-EAX",
            Algorithm::LocalSearch(_) => "LS",
        }
    }

    /// The same algorithm with its seed replaced.
    pub fn with_seed(&self, seed: u64) -> Algorithm {
        match self {
            Algorithm::Eax(c) => Algorithm::Eax(GaConfig { seed, ..c.clone() }),
            Algorithm::LocalSearch(c) => Algorithm::LocalSearch(LsConfig { seed, ..c.clone() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CtspSolution {
    /// Tour with its cost under the original distances.
    pub tour: Tour,
    pub cost: i64,
    /// Cost under the transformed distances.
    pub tsp_cost: i64,
    pub big_m: i64,
    pub feasible: bool,
    /// GA details, when the GA produced the tour.
    pub ga: Option<SolveResult>,
    pub wall_time: f64,
}

/// Solves `inst` with GA-EAX on its transformed TSP.
pub fn solve_ctsp(inst: &Instance, cfg: &GaConfig) -> Result<CtspSolution, SolveError> {
    solve_with(inst, &Algorithm::Eax(cfg.clone()), |_| {})
}

/// Solves `inst` with `algo`, passing GA generation records to `observe`.
pub fn solve_with<F>(
    inst: &Instance,
    algo: &Algorithm,
    observe: F,
) -> Result<CtspSolution, SolveError>
where
    F: FnMut(&GenerationRecord),
{
    let start = std::time::Instant::now();
    let tsp = to_tsp(inst)?;
    let (tsp_tour, ga) = match algo {
        Algorithm::Eax(cfg) => {
            let res = ga_solve_observed(&tsp, cfg, observe)?;
            (res.best_tour.clone(), Some(res))
        }
        Algorithm::LocalSearch(cfg) => (ls_solve(&tsp, cfg), None),
    };
    let (tour, feasible) = lift_tour(&tsp_tour, inst);
    if feasible {
        debug_assert_eq!(
            recover_cost(tsp_tour.cost(), inst.num_clusters(), tsp.big_m()),
            Ok(tour.cost())
        );
    }
    Ok(CtspSolution {
        cost: tour.cost(),
        tour,
        tsp_cost: tsp_tour.cost(),
        big_m: tsp.big_m(),
        feasible,
        ga,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
