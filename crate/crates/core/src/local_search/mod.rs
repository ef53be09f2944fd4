//! Tour improvement: 3-opt on the induced TSP, exact cluster optimization,
//! and the composite procedure applying one pass of each.

pub mod co;
pub mod three_opt;

pub use co::co_optimize;
pub use three_opt::three_opt;

use crate::instance::GtspInstance;
use crate::tour::Tour;

/// Composite improvement: one 3-opt pass to a local optimum of the induced
/// TSP, then one exact cluster-optimization pass. Nothing further runs, so
/// the result is not necessarily 3-opt-optimal again after the node choices
/// change. Degenerate sizes skip the step that does not apply (3-opt below
/// 4 clusters, cluster optimization below 3).
pub fn improve(instance: &GtspInstance, tour: &Tour) -> Tour {
    let improved = if instance.m() >= 4 {
        three_opt(instance, tour)
    } else {
        tour.clone()
    };
    if instance.m() >= 3 {
        co_optimize(instance, &improved).expect("cluster count checked above")
    } else {
        improved
    }
}
