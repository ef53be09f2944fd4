//! Nearest Neighbor construction, restated for clustered instances: the
//! greedy step picks the closest node among all nodes of still-unvisited
//! clusters, and the heuristic is run from every start node, keeping the
//! best tour.

use crate::instance::GtspInstance;
use crate::tour::Tour;

/// Greedy tour from a fixed start node. Ties fall to the lowest node id.
pub fn nearest_neighbor_from(instance: &GtspInstance, start: usize) -> Tour {
    let n = instance.n();
    let m = instance.m();
    let mut nodes = Vec::with_capacity(m);
    let mut cluster_done = vec![false; m];
    nodes.push(start);
    cluster_done[instance.cluster_of(start)] = true;
    let mut current = start;
    for _ in 1..m {
        let mut best: Option<(i64, usize)> = None;
        for v in 0..n {
            if cluster_done[instance.cluster_of(v)] {
                continue;
            }
            let d = instance.dist(current, v);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, v));
            }
        }
        let (_, v) = best.expect("some cluster still unvisited");
        nodes.push(v);
        cluster_done[instance.cluster_of(v)] = true;
        current = v;
    }
    Tour::from_feasible(instance, nodes)
}

/// Best Nearest Neighbor tour over all start nodes.
pub fn nearest_neighbor(instance: &GtspInstance) -> Tour {
    let mut best: Option<Tour> = None;
    for start in 0..instance.n() {
        let tour = nearest_neighbor_from(instance, start);
        if best.as_ref().is_none_or(|b| tour.weight() < b.weight()) {
            best = Some(tour);
        }
    }
    best.expect("instance has at least one node")
}
