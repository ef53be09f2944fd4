//! Tunable parameters of the ant colony system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which improvement procedure runs on every constructed tour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalSearchKind {
    /// 3-opt followed by cluster optimization (the full solver).
    Composite,
    /// 3-opt only (the ablated solver).
    #[serde(alias = "3opt")]
    ThreeOptOnly,
    /// No improvement; raw constructed tours.
    None,
}

/// Denominator of the local pheromone deposit `xi / (denominator * w(T_nn))`.
/// The printed update rule uses the node count; the cluster count is exposed
/// for experiments since a tour only has `m` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalUpdateDenominator {
    #[serde(alias = "n")]
    NodesN,
    #[serde(alias = "m")]
    ClustersM,
}

/// All scalar knobs of a run. `Default` carries the tuned values
/// (beta 3, rho 0.4, xi 0.03, q0 0, delta 300, 10 ants).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcsParams {
    /// Visibility exponent.
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Evaporation rate of the global update.
    #[serde(default = "default_rho")]
    pub rho: f64,
    /// Rate of the local update.
    #[serde(default = "default_xi")]
    pub xi: f64,
    /// Probability of taking the attractiveness argmax instead of sampling.
    #[serde(default)]
    pub q0: f64,
    /// Stop after this many consecutive iterations without improvement.
    #[serde(default = "default_delta")]
    pub delta: u64,
    #[serde(default = "default_num_ants", alias = "ants")]
    pub num_ants: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_local_search", alias = "ls")]
    pub local_search: LocalSearchKind,
    #[serde(default = "default_denominator", alias = "denominator")]
    pub local_update_denominator: LocalUpdateDenominator,
    /// Optional hard cap on iterations.
    #[serde(default)]
    pub max_iterations: Option<u64>,
    /// Optional hard cap on wall time, in seconds.
    #[serde(default)]
    pub max_time_s: Option<f64>,
    /// Keep a per-iteration trace in the run result.
    #[serde(default)]
    pub record_trace: bool,
}

fn default_beta() -> f64 {
    3.0
}
fn default_rho() -> f64 {
    0.4
}
fn default_xi() -> f64 {
    0.03
}
fn default_delta() -> u64 {
    300
}
fn default_num_ants() -> usize {
    10
}
fn default_local_search() -> LocalSearchKind {
    LocalSearchKind::Composite
}
fn default_denominator() -> LocalUpdateDenominator {
    LocalUpdateDenominator::NodesN
}

impl Default for AcsParams {
    fn default() -> Self {
        AcsParams {
            beta: default_beta(),
            rho: default_rho(),
            xi: default_xi(),
            q0: 0.0,
            delta: default_delta(),
            num_ants: default_num_ants(),
            seed: 0,
            local_search: default_local_search(),
            local_update_denominator: default_denominator(),
            max_iterations: None,
            max_time_s: None,
            record_trace: false,
        }
    }
}

impl AcsParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rho", self.rho), ("xi", self.xi), ("q0", self.q0)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidParams(format!("beta must be finite, got {}", self.beta)));
        }
        if self.num_ants == 0 {
            return Err(Error::InvalidParams("need at least one ant".into()));
        }
        if self.delta == 0 {
            return Err(Error::InvalidParams("stagnation window must be at least 1".into()));
        }
        Ok(())
    }
}
