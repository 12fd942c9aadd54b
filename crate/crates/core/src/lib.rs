//! Toolkit for the Clustered Traveling Salesman Problem (CTSP).
//!
//! A CTSP instance partitions the vertices of a symmetric TSP into clusters
//! that must each be visited as one contiguous block. This crate solves it by
//! turning the instance into a plain TSP: every inter-cluster edge gets a
//! large penalty `M`, so an optimal TSP tour crosses between clusters exactly
//! `m` times and is therefore cluster-contiguous.
//!
//! The pieces:
//!
//! * [`instance`] parses, writes and generates GTSPLIB-style instances.
//! * [`tour`] holds tours and the contiguity checks.
//! * [`transform`] builds the penalized TSP and maps costs back.
//! * [`localsearch`] provides nearest-neighbor construction, 2-opt and Or-opt.
//! * [`eax`] is the genetic algorithm driven by edge assembly crossover.
//! * [`exact`] has brute-force oracles and integer-programming model export.
//! * [`solve`] chains transformation, solver and cost recovery.
//! * [`bench`] runs trials, computes gaps and performance profiles.
//!
//! Vertices are `usize` indices in `0..n` throughout the library. Every text
//! format (instance files, tour files, LP models) uses the 1-based ids of the
//! TSPLIB convention.
//!
//! ```
//! use ctsp::instance::{GeneratorConfig, generate_clustered};
//! use ctsp::eax::GaConfig;
//! use ctsp::solve::solve_ctsp;
//!
//! let inst = generate_clustered(&GeneratorConfig::new(12, 3, 7)).unwrap();
//! let cfg = GaConfig { population: 20, offspring: 5, ..GaConfig::default() };
//! let sol = solve_ctsp(&inst, &cfg).unwrap();
//! assert!(sol.feasible);
//! ```

pub mod bench;
pub mod distance;
pub mod eax;
pub mod exact;
pub mod instance;
pub mod localsearch;
pub mod rng;
pub mod solve;
pub mod tour;
pub mod transform;

pub use distance::{Distance, DistanceMatrix};
pub use instance::Instance;
pub use tour::Tour;
pub use transform::TspInstance;
