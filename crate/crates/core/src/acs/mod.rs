//! The ant colony system metaheuristic.

pub mod engine;
pub mod params;
pub mod pheromone;

pub use engine::{
    candidate_scores, construct_all, global_update, init, local_update, run, select_next, Ant,
    CandidateScore, RunResult, RunStats, SearchState, Termination, TraceRecord,
};
pub use params::{AcsParams, LocalSearchKind, LocalUpdateDenominator};
pub use pheromone::PheromoneState;
