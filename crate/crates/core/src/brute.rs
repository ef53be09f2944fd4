//! Exhaustive optimum for desk-scale instances: every cluster ordering
//! (first cluster pinned, reversals deduplicated) times every node choice.
//! Used as the exactness reference in tests and experiments; refuses work
//! beyond its budget rather than approximating.

use crate::error::{Error, Result};
use crate::instance::GtspInstance;
use crate::local_search::co::layered_min_tour;
use crate::tour::Tour;

/// Default cap on the number of tours the plain enumerator may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 50_000_000;

fn factorial_half(m: usize) -> u128 {
    // Number of cluster orderings after pinning the first cluster and
    // identifying each ordering with its reversal: max(1, (m-1)!/2).
    let mut f: u128 = 1;
    for i in 2..m as u128 {
        f *= i;
    }
    (f / 2).max(1)
}

fn check_budget(instance: &GtspInstance, budget: u128) -> Result<u128> {
    if instance.m() > 8 {
        return Err(Error::BudgetExceeded {
            estimate: u128::MAX,
            budget,
        });
    }
    let product: u128 = instance
        .clusters()
        .iter()
        .map(|c| c.len() as u128)
        .product();
    let estimate = product.saturating_mul(factorial_half(instance.m()));
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(estimate)
}

/// Calls `f` with every cluster ordering that starts with cluster 0, keeping
/// exactly one of each reversal pair.
fn for_each_ordering(m: usize, mut f: impl FnMut(&[usize])) {
    let mut order: Vec<usize> = (0..m).collect();
    fn permute(order: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
        let len = order.len();
        if k == len {
            // order[1] < order[len-1] picks one orientation of the cycle.
            if len < 3 || order[1] < order[len - 1] {
                f(order);
            }
            return;
        }
        for i in k..len {
            order.swap(k, i);
            permute(order, k + 1, f);
            order.swap(k, i);
        }
    }
    permute(&mut order[..], 1, &mut f);
}

/// Globally optimal tour by plain enumeration of orderings and node choices.
pub fn brute_force_optimum(instance: &GtspInstance, budget: u128) -> Result<Tour> {
    check_budget(instance, budget)?;
    let mut best_nodes: Option<Vec<usize>> = None;
    let mut best_weight = i64::MAX;

    for_each_ordering(instance.m(), |order| {
        let mut chosen = vec![0usize; order.len()];
        descend(instance, order, 0, &mut chosen, 0, &mut best_weight, &mut best_nodes);
    });

    Ok(Tour::from_feasible(
        instance,
        best_nodes.expect("at least one feasible tour exists"),
    ))
}

/// Depth-first walk over node choices for a fixed cluster ordering,
/// accumulating the open-path weight; the closing edge is added at the leaf.
fn descend(
    instance: &GtspInstance,
    order: &[usize],
    depth: usize,
    chosen: &mut Vec<usize>,
    path_weight: i64,
    best_weight: &mut i64,
    best_nodes: &mut Option<Vec<usize>>,
) {
    if depth == order.len() {
        let total = path_weight + instance.dist(chosen[depth - 1], chosen[0]);
        if total < *best_weight {
            *best_weight = total;
            *best_nodes = Some(chosen.clone());
        }
        return;
    }
    for &v in instance.cluster_members(order[depth]) {
        chosen[depth] = v;
        let w = if depth == 0 {
            0
        } else {
            path_weight + instance.dist(chosen[depth - 1], v)
        };
        descend(instance, order, depth + 1, chosen, w, best_weight, best_nodes);
    }
}

/// Same optimum, but solving the node choices of each ordering with the
/// layered shortest-path pass instead of full enumeration. Agrees with
/// [`brute_force_optimum`] on every instance; much faster on large clusters.
pub fn brute_force_optimum_dp(instance: &GtspInstance, budget: u128) -> Result<Tour> {
    let orderings = factorial_half(instance.m());
    let work = orderings
        .saturating_mul(instance.n() as u128)
        .saturating_mul(instance.largest_cluster_size() as u128);
    if work > budget {
        return Err(Error::BudgetExceeded {
            estimate: work,
            budget,
        });
    }
    let mut best: Option<(Vec<usize>, i64)> = None;
    for_each_ordering(instance.m(), |order| {
        let (nodes, weight) = layered_min_tour(instance, order);
        if best.as_ref().is_none_or(|(_, bw)| weight < *bw) {
            best = Some((nodes, weight));
        }
    });
    let (nodes, _) = best.expect("at least one ordering");
    Ok(Tour::from_feasible(instance, nodes))
}
