//! Problem data model: a node set partitioned into clusters plus a symmetric
//! inter-cluster distance matrix.
//!
//! Node ids and cluster ids are 0-based internally; the TSPLIB-facing code in
//! [`crate::tsplib`] converts from the 1-based file convention at the boundary.

use crate::error::{Error, Result};

/// Marks intra-cluster matrix entries, which no algorithm may ever read.
pub(crate) const FORBIDDEN: u32 = u32::MAX;

/// An immutable GTSP instance: `n` nodes partitioned into `m` non-empty,
/// pairwise disjoint clusters, with a symmetric non-negative distance defined
/// for every inter-cluster node pair.
#[derive(Debug, Clone)]
pub struct GtspInstance {
    name: String,
    n: usize,
    m: usize,
    clusters: Vec<Vec<usize>>,
    cluster_of: Vec<usize>,
    /// Row-major n*n matrix; intra-cluster entries hold `FORBIDDEN`.
    dist: Vec<u32>,
    largest_cluster: usize,
    smallest_cluster: usize,
}

impl GtspInstance {
    /// Builds an instance from a full distance matrix and a cluster partition,
    /// validating every structural invariant. `matrix[u * n + v]` may contain
    /// arbitrary values on intra-cluster pairs; they are overwritten with the
    /// forbidden sentinel.
    pub fn new(name: impl Into<String>, clusters: Vec<Vec<usize>>, matrix: Vec<u32>) -> Result<Self> {
        let m = clusters.len();
        if m < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 clusters, got {m}"
            )));
        }
        let mut cluster_of: Vec<Option<usize>> = Vec::new();
        let mut n = 0;
        for members in &clusters {
            if members.is_empty() {
                return Err(Error::InvalidInstance("empty cluster".into()));
            }
            for &v in members {
                n = n.max(v + 1);
            }
        }
        cluster_of.resize(n, None);
        for (ci, members) in clusters.iter().enumerate() {
            for &v in members {
                match cluster_of[v] {
                    Some(other) => {
                        return Err(Error::InvalidInstance(format!(
                            "node {} assigned to clusters {} and {}",
                            v + 1,
                            other + 1,
                            ci + 1
                        )))
                    }
                    None => cluster_of[v] = Some(ci),
                }
            }
        }
        let mut cluster_of_flat = Vec::with_capacity(n);
        for (v, c) in cluster_of.iter().enumerate() {
            match c {
                Some(ci) => cluster_of_flat.push(*ci),
                None => {
                    return Err(Error::InvalidInstance(format!(
                        "node {} not assigned to any cluster",
                        v + 1
                    )))
                }
            }
        }
        if matrix.len() != n * n {
            return Err(Error::InvalidInstance(format!(
                "distance matrix has {} entries, expected {}",
                matrix.len(),
                n * n
            )));
        }

        let mut dist = matrix;
        for u in 0..n {
            for v in 0..n {
                if cluster_of_flat[u] == cluster_of_flat[v] {
                    dist[u * n + v] = FORBIDDEN;
                } else {
                    let duv = dist[u * n + v];
                    if duv == FORBIDDEN {
                        return Err(Error::InvalidInstance(format!(
                            "distance between nodes {} and {} is out of range",
                            u + 1,
                            v + 1
                        )));
                    }
                    if dist[v * n + u] != duv {
                        return Err(Error::InvalidInstance(format!(
                            "asymmetric distance between nodes {} and {}",
                            u + 1,
                            v + 1
                        )));
                    }
                }
            }
        }

        let mut clusters = clusters;
        for members in &mut clusters {
            members.sort_unstable();
        }
        let largest_cluster = clusters.iter().map(Vec::len).max().unwrap();
        let smallest_cluster = clusters.iter().map(Vec::len).min().unwrap();

        Ok(GtspInstance {
            name: name.into(),
            n,
            m,
            clusters,
            cluster_of: cluster_of_flat,
            dist,
            largest_cluster,
            smallest_cluster,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Node count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cluster count.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster_members(&self, cluster: usize) -> &[usize] {
        &self.clusters[cluster]
    }

    /// Cluster index of a node.
    pub fn cluster_of(&self, node: usize) -> usize {
        self.cluster_of[node]
    }

    /// Size of the largest cluster.
    pub fn largest_cluster_size(&self) -> usize {
        self.largest_cluster
    }

    /// Size of the smallest cluster.
    pub fn smallest_cluster_size(&self) -> usize {
        self.smallest_cluster
    }

    /// Inter-cluster distance. Reading an intra-cluster pair is a bug in the
    /// caller; debug builds abort on it.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> i64 {
        let d = self.dist[u * self.n + v];
        debug_assert!(
            d != FORBIDDEN,
            "read of forbidden intra-cluster distance ({u}, {v})"
        );
        d as i64
    }

    /// Raw matrix entry, `None` on intra-cluster pairs. For display and I/O.
    pub fn dist_checked(&self, u: usize, v: usize) -> Option<i64> {
        let d = self.dist[u * self.n + v];
        (d != FORBIDDEN).then_some(d as i64)
    }
}
