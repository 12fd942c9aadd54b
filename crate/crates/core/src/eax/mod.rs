//! Genetic algorithm with edge assembly crossover (GA-EAX).
//!
//! One crossover of parents A and B runs five steps:
//!
//! 1. [`build_union_graph`] overlays both tours into the multigraph `G_AB`;
//! 2. [`extract_ab_cycles`] splits the edges that differ into AB-cycles whose
//!    edges alternate between A and B;
//! 3. [`select_eset`] picks an E-set of AB-cycles;
//! 4. [`apply_eset`] removes the E-set's A-edges from a copy of A and adds its
//!    B-edges, leaving a degree-2 graph of one or more subtours;
//! 5. [`merge_subtours`] greedily reconnects the subtours into a tour.
//!
//! [`ga_solve`] evolves a population with this operator: each generation
//! shuffles the population, crosses every member with its successor and
//! keeps the best of the member and its offspring.

mod assemble;
mod crossover;
mod cycles;
mod ga;
mod union;

use thiserror::Error;

pub use assemble::{apply_eset, merge_subtours, Intermediate};
pub use crossover::eax_crossover;
pub use cycles::{extract_ab_cycles, select_eset, AbCycle, ESet, EsetStrategy};
pub use ga::{ga_solve, ga_solve_observed, GaConfig, GenerationRecord, SolveResult, Termination};
pub use union::{build_union_graph, UnionGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EaxError {
    #[error("parents cover different vertex sets ({0} vs {1} vertices)")]
    VertexSetMismatch(usize, usize),
    #[error("no AB-cycle to select from")]
    EmptyCycles,
    #[error("E-set inconsistent with parent A at edge ({0}, {1})")]
    InconsistentESet(usize, usize),
    #[error("invalid GA configuration: {0}")]
    InvalidConfig(String),
}
