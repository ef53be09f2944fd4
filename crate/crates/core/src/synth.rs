//! Seeded random instance generation for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::GtspInstance;

/// Shape of a generated instance: cluster count, cluster-size range and
/// integer distance range (inclusive).
#[derive(Debug, Clone, Copy)]
pub struct SynthSpec {
    pub m: usize,
    pub min_cluster_size: usize,
    pub max_cluster_size: usize,
    pub min_dist: u32,
    pub max_dist: u32,
}

impl SynthSpec {
    pub fn new(m: usize, cluster_sizes: (usize, usize), dists: (u32, u32)) -> Self {
        SynthSpec {
            m,
            min_cluster_size: cluster_sizes.0,
            max_cluster_size: cluster_sizes.1,
            min_dist: dists.0,
            max_dist: dists.1,
        }
    }
}

/// Generates a random symmetric instance. The same (spec, seed) pair always
/// produces the same instance.
pub fn random_instance(spec: &SynthSpec, seed: u64) -> GtspInstance {
    assert!(spec.m >= 2, "need at least 2 clusters");
    assert!(spec.min_cluster_size >= 1 && spec.min_cluster_size <= spec.max_cluster_size);
    assert!(spec.min_dist <= spec.max_dist);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut clusters = Vec::with_capacity(spec.m);
    let mut next_node = 0;
    for _ in 0..spec.m {
        let size = rng.gen_range(spec.min_cluster_size..=spec.max_cluster_size);
        clusters.push((next_node..next_node + size).collect::<Vec<_>>());
        next_node += size;
    }
    let n = next_node;

    let mut matrix = vec![0u32; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let d = rng.gen_range(spec.min_dist..=spec.max_dist);
            matrix[u * n + v] = d;
            matrix[v * n + u] = d;
        }
    }

    GtspInstance::new(format!("rnd-m{}-s{}", spec.m, seed), clusters, matrix)
        .expect("generated partition and matrix are valid by construction")
}
