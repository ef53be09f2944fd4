//! Shared oracles and fixtures for the integration suites. Everything here
//! recomputes results from first principles instead of calling into the
//! solver's own arithmetic.

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use gtsp_core::instance::GtspInstance;
use gtsp_core::tour::{tour_weight, Tour};

/// Upper 1% critical values of the chi-squared distribution, df 1..=24.
/// Frozen from the standard quantile table.
pub const CHI2_CRIT_99: [f64; 24] = [
    6.6348966010212145,
    9.21034037197618,
    11.344866730144373,
    13.276704135987622,
    15.08627246938899,
    16.811893829770927,
    18.475306906582357,
    20.090235029663233,
    21.665994333461924,
    23.209251158954356,
    24.724970311318277,
    26.216967305535853,
    27.68824961045705,
    29.141237740672796,
    30.57791416689249,
    31.999926908815176,
    33.40866360500461,
    34.805305734705065,
    36.19086912927004,
    37.56623478662507,
    38.93217268351607,
    40.289360437593864,
    41.638398118858476,
    42.97982013935165,
];

pub fn chi2_crit_99(df: usize) -> f64 {
    CHI2_CRIT_99[df - 1]
}

/// Uniformly random feasible tour: one random node per cluster, random order.
pub fn random_feasible_tour(instance: &GtspInstance, rng: &mut ChaCha8Rng) -> Tour {
    let mut nodes: Vec<usize> = instance
        .clusters()
        .iter()
        .map(|members| *members.choose(rng).unwrap())
        .collect();
    nodes.shuffle(rng);
    Tour::new(instance, nodes).unwrap()
}

/// Minimum weight over the full Cartesian product of node choices with the
/// cluster visiting order of `tour` held fixed. Plain odometer enumeration.
pub fn product_minimum(instance: &GtspInstance, tour: &Tour) -> i64 {
    let order: Vec<usize> = tour
        .nodes()
        .iter()
        .map(|&v| instance.cluster_of(v))
        .collect();
    let sizes: Vec<usize> = order
        .iter()
        .map(|&c| instance.cluster_members(c).len())
        .collect();
    let mut odometer = vec![0usize; order.len()];
    let mut best = i64::MAX;
    loop {
        let nodes: Vec<usize> = order
            .iter()
            .zip(&odometer)
            .map(|(&c, &i)| instance.cluster_members(c)[i])
            .collect();
        best = best.min(tour_weight(instance, &nodes).unwrap());
        let mut pos = 0;
        while pos < odometer.len() {
            odometer[pos] += 1;
            if odometer[pos] < sizes[pos] {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
        if pos == odometer.len() {
            return best;
        }
    }
}

/// Every tour reachable by one 3-opt move: remove edges after positions
/// i, j, k, then reattach the two inner segments in each of the seven
/// non-identity ways (reversal of either segment, exchange of the two).
pub fn three_opt_neighbors(nodes: &[usize]) -> Vec<Vec<usize>> {
    let m = nodes.len();
    let mut out = Vec::new();
    for i in 0..m.saturating_sub(2) {
        for j in i + 1..m - 1 {
            for k in j + 1..m {
                for rev_a in [false, true] {
                    for rev_b in [false, true] {
                        for swapped in [false, true] {
                            if !rev_a && !rev_b && !swapped {
                                continue;
                            }
                            let mut a: Vec<usize> = nodes[i + 1..=j].to_vec();
                            let mut b: Vec<usize> = nodes[j + 1..=k].to_vec();
                            if rev_a {
                                a.reverse();
                            }
                            if rev_b {
                                b.reverse();
                            }
                            let mut cand: Vec<usize> = nodes[..=i].to_vec();
                            if swapped {
                                cand.extend_from_slice(&b);
                                cand.extend_from_slice(&a);
                            } else {
                                cand.extend_from_slice(&a);
                                cand.extend_from_slice(&b);
                            }
                            cand.extend_from_slice(&nodes[k + 1..]);
                            out.push(cand);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Directory holding the published clustered benchmark files, if the user
/// provided any: GTSP_INSTANCE_DIR, falling back to <repo>/data/instances.
pub fn instance_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("GTSP_INSTANCE_DIR") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/instances")
}

/// Loads one benchmark instance by name if its file is present.
pub fn load_benchmark(name: &str) -> Option<GtspInstance> {
    let path = instance_dir().join(format!("{name}.gtsp"));
    let text = std::fs::read_to_string(path).ok()?;
    match gtsp_core::parse_gtsp(&text) {
        Ok(instance) => Some(instance),
        Err(e) => panic!("benchmark file for {name} exists but does not parse: {e}"),
    }
}
