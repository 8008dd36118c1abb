//! Average-linkage agglomerative clustering of topic centroids.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::math;

/// One agglomeration step. Cluster ids below `leaves` are input points; the
/// cluster created by merge `i` has id `leaves + i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dendrogram {
    pub leaves: usize,
    pub merges: Vec<Merge>,
}

/// Nested view of a dendrogram.
#[derive(Debug, Clone, PartialEq)]
pub enum DendroNode {
    Leaf(usize),
    Merge { height: f64, left: Box<DendroNode>, right: Box<DendroNode> },
}

impl Dendrogram {
    /// Root of the tree; `None` for zero leaves.
    pub fn tree(&self) -> Option<DendroNode> {
        if self.leaves == 0 {
            return None;
        }
        Some(self.node(self.leaves + self.merges.len() - 1))
    }

    fn node(&self, id: usize) -> DendroNode {
        if id < self.leaves {
            return DendroNode::Leaf(id);
        }
        let m = &self.merges[id - self.leaves];
        DendroNode::Merge {
            height: m.height,
            left: Box::new(self.node(m.left)),
            right: Box::new(self.node(m.right)),
        }
    }

    /// Leaf members of cluster `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![id];
        while let Some(c) = stack.pop() {
            if c < self.leaves {
                out.push(c);
            } else {
                let m = &self.merges[c - self.leaves];
                stack.push(m.left);
                stack.push(m.right);
            }
        }
        out.sort_unstable();
        out
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    math::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Agglomerates centroids with average linkage on Euclidean distance.
///
/// At each step the closest pair of active clusters merges; ties go to the
/// pair with the smallest ids. Distances to a merged cluster follow the
/// Lance–Williams update for average linkage.
pub fn hierarchical_topics(centroids: &[Vec<f64>]) -> Dendrogram {
    let n = centroids.len();
    let mut dist: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| euclid(&centroids[i], &centroids[j])).collect())
        .collect();
    // active[k] = (cluster id, size) for row/column k of `dist`
    let mut active: Vec<(usize, usize)> = (0..n).map(|i| (i, 1)).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    while active.len() > 1 {
        let mut best = (0, 1);
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                if dist[i][j] < dist[best.0][best.1] {
                    best = (i, j);
                }
            }
        }
        let (i, j) = best;
        let (id_i, n_i) = active[i];
        let (id_j, n_j) = active[j];
        let height = dist[i][j];
        let merged: Vec<f64> = (0..active.len())
            .map(|k| (n_i as f64 * dist[i][k] + n_j as f64 * dist[j][k]) / (n_i + n_j) as f64)
            .collect();
        // row i becomes the merged cluster, row j is removed
        for k in 0..active.len() {
            dist[i][k] = merged[k];
            dist[k][i] = merged[k];
        }
        dist[i][i] = 0.0;
        dist.remove(j);
        for row in dist.iter_mut() {
            row.remove(j);
        }
        active[i] = (n + merges.len(), n_i + n_j);
        active.remove(j);
        merges.push(Merge {
            left: id_i.min(id_j),
            right: id_i.max(id_j),
            height,
            size: n_i + n_j,
        });
        // keep rows ordered by cluster id so ties resolve by smallest ids
        let mut order: Vec<usize> = (0..active.len()).collect();
        order.sort_by_key(|&k| active[k].0);
        active = order.iter().map(|&k| active[k]).collect();
        dist = order.iter().map(|&r| order.iter().map(|&c| dist[r][c]).collect()).collect();
    }
    Dendrogram { leaves: n, merges }
}
