//! Tour representation and the weight / error arithmetic on it.

use crate::error::{Error, Result};
use crate::instance::GtspInstance;

/// A feasible tour: one node per cluster, closed into a cycle. The cached
/// weight always equals the recomputed cycle weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    nodes: Vec<usize>,
    weight: i64,
}

impl Tour {
    /// Validates feasibility against `instance` and caches the weight.
    pub fn new(instance: &GtspInstance, nodes: Vec<usize>) -> Result<Self> {
        let weight = tour_weight(instance, &nodes)?;
        Ok(Tour { nodes, weight })
    }

    /// Skips feasibility checks in release builds; for solver-internal
    /// sequences that are feasible by construction.
    pub(crate) fn from_feasible(instance: &GtspInstance, nodes: Vec<usize>) -> Self {
        debug_assert!(check_feasible(instance, &nodes).is_ok());
        let weight = cycle_weight(instance, &nodes);
        Tour { nodes, weight }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Canonical one-line form: 1-based node ids, rotated to start at the
    /// lowest id, oriented so the second id is smaller than the last.
    pub fn canonical_line(&self) -> String {
        let m = self.nodes.len();
        let start = (0..m).min_by_key(|&i| self.nodes[i]).unwrap();
        let mut seq: Vec<usize> = (0..m).map(|i| self.nodes[(start + i) % m]).collect();
        if m > 2 && seq[1] > seq[m - 1] {
            seq[1..].reverse();
        }
        let ids: Vec<String> = seq.iter().map(|v| (v + 1).to_string()).collect();
        ids.join(" ")
    }
}

fn check_feasible(instance: &GtspInstance, nodes: &[usize]) -> Result<()> {
    if nodes.len() != instance.m() {
        return Err(Error::InfeasibleTour(format!(
            "tour visits {} nodes, instance has {} clusters",
            nodes.len(),
            instance.m()
        )));
    }
    let mut seen = vec![false; instance.m()];
    for &v in nodes {
        if v >= instance.n() {
            return Err(Error::InfeasibleTour(format!("unknown node {}", v + 1)));
        }
        let c = instance.cluster_of(v);
        if seen[c] {
            return Err(Error::InfeasibleTour(format!(
                "cluster {} visited twice",
                c + 1
            )));
        }
        seen[c] = true;
    }
    Ok(())
}

fn cycle_weight(instance: &GtspInstance, nodes: &[usize]) -> i64 {
    let m = nodes.len();
    let mut w = instance.dist(nodes[m - 1], nodes[0]);
    for i in 0..m - 1 {
        w += instance.dist(nodes[i], nodes[i + 1]);
    }
    w
}

/// Weight of the closed cycle through `nodes`, after checking that the
/// sequence visits each cluster exactly once.
pub fn tour_weight(instance: &GtspInstance, nodes: &[usize]) -> Result<i64> {
    check_feasible(instance, nodes)?;
    Ok(cycle_weight(instance, nodes))
}

/// Relative error in percent against a best known value: `100 * (w - best) / best`.
/// Negative when `w` improves on the reference.
pub fn relative_error(weight: i64, best: i64) -> Result<f64> {
    if best <= 0 {
        return Err(Error::Domain(format!(
            "best known value must be positive, got {best}"
        )));
    }
    Ok(100.0 * (weight - best) as f64 / best as f64)
}
