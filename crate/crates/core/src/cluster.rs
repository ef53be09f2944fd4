//! Turns a plain TSP instance into a clustered one: ceil(n/5) centers spread
//! by greedy farthest-point dispersion, every node attached to its nearest
//! center.

use crate::error::{Error, Result};
use crate::instance::GtspInstance;
use crate::tsplib::TspData;

/// Clusters `tsp` into m = ceil(n/5) groups and returns the resulting
/// instance, named `<m><tsp name>`.
///
/// Center choice is deterministic: the first center is the node with the
/// largest total distance to all nodes; each further center maximizes its
/// minimum distance to the centers chosen so far. Ties fall to the lowest
/// node id, assignment ties to the lowest center index.
pub fn cluster_instance(tsp: &TspData) -> Result<GtspInstance> {
    if tsp.coords.is_none() {
        return Err(Error::InvalidInstance(
            "clustering needs node coordinates".into(),
        ));
    }
    let n = tsp.n;
    if n < 10 {
        return Err(Error::InvalidInstance(format!(
            "clustering needs at least 10 nodes, got {n}"
        )));
    }
    let m = n.div_ceil(5);

    // max_by_key keeps the last of equal keys; pairing with Reverse(id)
    // makes ties fall to the lowest node id instead.
    use std::cmp::Reverse;
    let mut centers = Vec::with_capacity(m);
    let first = (0..n)
        .max_by_key(|&v| ((0..n).map(|u| tsp.distance(v, u)).sum::<i64>(), Reverse(v)))
        .unwrap();
    centers.push(first);

    // min_dist_to_center[v] tracks the dispersion objective incrementally.
    let mut min_dist: Vec<i64> = (0..n).map(|v| tsp.distance(v, first)).collect();
    while centers.len() < m {
        let next = (0..n)
            .filter(|v| !centers.contains(v))
            .max_by_key(|&v| (min_dist[v], Reverse(v)))
            .unwrap();
        centers.push(next);
        for (v, d) in min_dist.iter_mut().enumerate() {
            *d = (*d).min(tsp.distance(v, next));
        }
    }

    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..n {
        let (ci, _) = centers
            .iter()
            .enumerate()
            .min_by_key(|(_, &c)| tsp.distance(v, c))
            .unwrap();
        clusters[ci].push(v);
    }

    let name = format!("{m}{}", tsp.name);
    GtspInstance::new(name, clusters, tsp.full_matrix()?)
}
