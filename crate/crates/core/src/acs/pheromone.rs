//! Dense symmetric pheromone storage over inter-cluster node pairs.

use crate::instance::GtspInstance;

/// Pheromone levels, kept strictly positive and symmetric by construction.
/// Intra-cluster entries are poisoned with NaN and must never be read.
#[derive(Debug, Clone)]
pub struct PheromoneState {
    n: usize,
    tau0: f64,
    tau: Vec<f64>,
}

impl PheromoneState {
    /// Every inter-cluster pair starts at `tau0`.
    pub fn new(instance: &GtspInstance, tau0: f64) -> Self {
        let n = instance.n();
        let mut tau = vec![f64::NAN; n * n];
        for u in 0..n {
            for v in 0..n {
                if instance.cluster_of(u) != instance.cluster_of(v) {
                    tau[u * n + v] = tau0;
                }
            }
        }
        PheromoneState { n, tau0, tau }
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        let t = self.tau[u * self.n + v];
        debug_assert!(!t.is_nan(), "read of intra-cluster pheromone ({u}, {v})");
        t
    }

    /// Sets both orientations of an edge.
    pub fn set(&mut self, u: usize, v: usize, value: f64) {
        self.tau[u * self.n + v] = value;
        self.tau[v * self.n + u] = value;
    }

    /// Convex step toward `deposit` with rate `rate`, applied symmetrically.
    #[inline]
    pub fn blend(&mut self, u: usize, v: usize, rate: f64, deposit: f64) {
        let updated = (1.0 - rate) * self.get(u, v) + rate * deposit;
        self.set(u, v, updated);
    }

    /// Full positivity and symmetry scan; for tests and assertions.
    pub fn check(&self, instance: &GtspInstance) -> std::result::Result<(), String> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                let inter = instance.cluster_of(u) != instance.cluster_of(v);
                let t_uv = self.tau[u * self.n + v];
                let t_vu = self.tau[v * self.n + u];
                if inter {
                    if !t_uv.is_finite() || t_uv <= 0.0 {
                        return Err(format!("tau({u},{v}) = {t_uv} is not positive"));
                    }
                    if t_uv != t_vu {
                        return Err(format!("tau({u},{v}) = {t_uv} != tau({v},{u}) = {t_vu}"));
                    }
                } else if !t_uv.is_nan() || !t_vu.is_nan() {
                    return Err(format!("intra-cluster tau({u},{v}) was written"));
                }
            }
        }
        Ok(())
    }
}
