//! Solver library for the symmetric generalized traveling salesman problem:
//! a node set is partitioned into clusters and the goal is the shortest
//! cycle visiting exactly one node per cluster.
//!
//! The solver is an ant colony system hybridized with a two-stage local
//! search (3-opt on the induced TSP, then exact cluster optimization via a
//! layered shortest-path pass). The crate also ships TSPLIB/GTSP file
//! ingestion, a clustering generator for plain TSP instances, a brute-force
//! reference for desk-scale checks, and a benchmark harness with seeded,
//! reproducible experiments.

pub mod acs;
pub mod brute;
pub mod cluster;
pub mod error;
pub mod harness;
pub mod instance;
pub mod local_search;
pub mod nn;
pub mod registry;
pub mod synth;
pub mod tour;
pub mod tsplib;

pub use acs::{run, AcsParams, LocalSearchKind, LocalUpdateDenominator, PheromoneState, RunResult};
pub use brute::{brute_force_optimum, brute_force_optimum_dp, DEFAULT_ENUMERATION_BUDGET};
pub use cluster::cluster_instance;
pub use error::{Error, Result};
pub use instance::GtspInstance;
pub use local_search::{co_optimize, improve, three_opt};
pub use nn::nearest_neighbor;
pub use registry::{BestKnownRegistry, ReferenceTable};
pub use tour::{relative_error, tour_weight, Tour};
pub use tsplib::{parse_gtsp, parse_tsplib, write_gtsp, TspData};
