//! 3-opt on the TSP induced by a tour's current node choices. Cluster node
//! selections never change here; only the visiting order does. Runs
//! best-improvement passes until no reconnection of any three removed edges
//! (2-opt moves included as degenerate cases) improves the weight.

use crate::instance::GtspInstance;
use crate::tour::Tour;

/// The seven non-identity reconnections of segments A and B after removing
/// edges (a,b), (c,d), (e,f): each segment may be reversed, and the two may
/// swap places.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Reconnect {
    RevA,
    RevB,
    RevBoth,
    Swap,
    SwapRevA,
    SwapRevB,
    SwapRevBoth,
}

pub(crate) const RECONNECTS: [Reconnect; 7] = [
    Reconnect::RevA,
    Reconnect::RevB,
    Reconnect::RevBoth,
    Reconnect::Swap,
    Reconnect::SwapRevA,
    Reconnect::SwapRevB,
    Reconnect::SwapRevBoth,
];

fn move_delta(
    instance: &GtspInstance,
    nodes: &[usize],
    i: usize,
    j: usize,
    k: usize,
    case: Reconnect,
) -> i64 {
    let m = nodes.len();
    let (a, b) = (nodes[i], nodes[i + 1]);
    let (c, d) = (nodes[j], nodes[j + 1]);
    let (e, f) = (nodes[k], nodes[(k + 1) % m]);
    let dist = |u, v| instance.dist(u, v);
    match case {
        Reconnect::RevA => dist(a, c) + dist(b, d) - dist(a, b) - dist(c, d),
        Reconnect::RevB => dist(c, e) + dist(d, f) - dist(c, d) - dist(e, f),
        Reconnect::RevBoth => {
            dist(a, c) + dist(b, e) + dist(d, f) - dist(a, b) - dist(c, d) - dist(e, f)
        }
        Reconnect::Swap => {
            dist(a, d) + dist(e, b) + dist(c, f) - dist(a, b) - dist(c, d) - dist(e, f)
        }
        Reconnect::SwapRevA => {
            dist(a, d) + dist(e, c) + dist(b, f) - dist(a, b) - dist(c, d) - dist(e, f)
        }
        Reconnect::SwapRevB => {
            dist(a, e) + dist(d, b) + dist(c, f) - dist(a, b) - dist(c, d) - dist(e, f)
        }
        Reconnect::SwapRevBoth => dist(a, e) + dist(b, f) - dist(a, b) - dist(e, f),
    }
}

/// Rebuilds the node sequence for a chosen reconnection.
pub(crate) fn apply_move(
    nodes: &[usize],
    i: usize,
    j: usize,
    k: usize,
    case: Reconnect,
) -> Vec<usize> {
    let mut seg_a: Vec<usize> = nodes[i + 1..=j].to_vec();
    let mut seg_b: Vec<usize> = nodes[j + 1..=k].to_vec();
    let (rev_a, rev_b, swap) = match case {
        Reconnect::RevA => (true, false, false),
        Reconnect::RevB => (false, true, false),
        Reconnect::RevBoth => (true, true, false),
        Reconnect::Swap => (false, false, true),
        Reconnect::SwapRevA => (true, false, true),
        Reconnect::SwapRevB => (false, true, true),
        Reconnect::SwapRevBoth => (true, true, true),
    };
    if rev_a {
        seg_a.reverse();
    }
    if rev_b {
        seg_b.reverse();
    }
    let mut out = Vec::with_capacity(nodes.len());
    out.extend_from_slice(&nodes[..=i]);
    if swap {
        out.extend_from_slice(&seg_b);
        out.extend_from_slice(&seg_a);
    } else {
        out.extend_from_slice(&seg_a);
        out.extend_from_slice(&seg_b);
    }
    out.extend_from_slice(&nodes[k + 1..]);
    out
}

fn best_move(instance: &GtspInstance, nodes: &[usize]) -> Option<(usize, usize, usize, Reconnect)> {
    let m = nodes.len();
    let mut best_delta = 0i64;
    let mut best = None;
    for i in 0..m - 2 {
        for j in i + 1..m - 1 {
            for k in j + 1..m {
                for case in RECONNECTS {
                    let delta = move_delta(instance, nodes, i, j, k, case);
                    if delta < best_delta {
                        best_delta = delta;
                        best = Some((i, j, k, case));
                    }
                }
            }
        }
    }
    best
}

/// 3-opt local optimum of the induced TSP. Tours with fewer than 4 clusters
/// have no non-trivial move and are returned unchanged.
pub fn three_opt(instance: &GtspInstance, tour: &Tour) -> Tour {
    if instance.m() < 4 {
        return tour.clone();
    }
    let mut nodes = tour.nodes().to_vec();
    while let Some((i, j, k, case)) = best_move(instance, &nodes) {
        nodes = apply_move(&nodes, i, j, k, case);
    }
    let out = Tour::from_feasible(instance, nodes);
    debug_assert!(out.weight() <= tour.weight());
    out
}
