//! Cluster optimization: fixes the cluster visiting order of a tour and
//! searches the full Cartesian product of node choices exactly, as a
//! shortest-path pass over a layered graph (one layer per cluster plus a
//! copy of the first).

use crate::error::{Error, Result};
use crate::instance::GtspInstance;
use crate::tour::Tour;

/// Minimum-weight tour visiting clusters in exactly the order given, with
/// free node choice in every cluster. Returns the chosen nodes (aligned with
/// `cluster_order`) and the tour weight.
///
/// One forward pass per source node in the first cluster; ties between
/// equal-weight predecessors and sources fall to the lowest node id.
pub(crate) fn layered_min_tour(instance: &GtspInstance, cluster_order: &[usize]) -> (Vec<usize>, i64) {
    let m = cluster_order.len();
    debug_assert!(m >= 2);
    let layers: Vec<&[usize]> = cluster_order
        .iter()
        .map(|&c| instance.cluster_members(c))
        .collect();

    let mut best_total = i64::MAX;
    let mut best_nodes: Option<Vec<usize>> = None;

    // Scratch buffers reused across sources.
    let mut cost = Vec::new();
    let mut next_cost = Vec::new();
    let mut parents: Vec<Vec<usize>> = Vec::new();

    for &source in layers[0] {
        cost.clear();
        cost.extend(layers[1].iter().map(|&u| instance.dist(source, u)));
        parents.clear();

        for layer in 2..m {
            let prev_nodes = layers[layer - 1];
            next_cost.clear();
            let mut parent_row = Vec::with_capacity(layers[layer].len());
            for &w in layers[layer] {
                let mut best = i64::MAX;
                let mut best_k = 0;
                for (k, &u) in prev_nodes.iter().enumerate() {
                    let c = cost[k] + instance.dist(u, w);
                    if c < best {
                        best = c;
                        best_k = k;
                    }
                }
                next_cost.push(best);
                parent_row.push(best_k);
            }
            std::mem::swap(&mut cost, &mut next_cost);
            parents.push(parent_row);
        }

        // Close the cycle back to the source copy.
        let mut total = i64::MAX;
        let mut last_k = 0;
        for (k, &u) in layers[m - 1].iter().enumerate() {
            let c = cost[k] + instance.dist(u, source);
            if c < total {
                total = c;
                last_k = k;
            }
        }

        if total < best_total {
            best_total = total;
            let mut picked = vec![0usize; m];
            picked[0] = source;
            let mut k = last_k;
            for layer in (1..m).rev() {
                picked[layer] = layers[layer][k];
                if layer >= 2 {
                    k = parents[layer - 2][k];
                }
            }
            best_nodes = Some(picked);
        }
    }

    (best_nodes.expect("first cluster is non-empty"), best_total)
}

/// Best tour in the cluster-optimization neighborhood of `tour`: same cyclic
/// cluster order, free node choices. The tour is first rotated so the
/// smallest cluster comes first, which bounds the pass at O(n * gamma * s).
pub fn co_optimize(instance: &GtspInstance, tour: &Tour) -> Result<Tour> {
    let m = instance.m();
    if m < 3 {
        return Err(Error::DegenerateTour(m));
    }
    let nodes = tour.nodes();
    let pivot = (0..m)
        .min_by_key(|&i| instance.cluster_members(instance.cluster_of(nodes[i])).len())
        .unwrap();
    let cluster_order: Vec<usize> = (0..m)
        .map(|i| instance.cluster_of(nodes[(pivot + i) % m]))
        .collect();

    let (picked, weight) = layered_min_tour(instance, &cluster_order);
    debug_assert!(weight <= tour.weight());
    let out = Tour::from_feasible(instance, picked);
    debug_assert_eq!(out.weight(), weight);
    Ok(out)
}
