//! Exact machinery: brute-force optima for tiny instances and
//! integer-programming models for external MIP solvers.

mod brute;
mod lp;

use thiserror::Error;

pub use brute::{
    brute_force_ctsp, brute_force_tsp, ctsp_enumeration_size, CTSP_ENUMERATION_LIMIT, TSP_LIMIT,
};
pub use lp::{export_mcf_model, export_mtz_model, Formulation, ModelSpec, MCF_LIMIT, MTZ_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{what}: size {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
}
