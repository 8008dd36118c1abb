//! Density clustering of document embeddings.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Per-point topic labels; `-1` marks noise. Topic ids are dense and ordered
/// by descending size (ties by smallest member index).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TopicAssignment {
    pub labels: Vec<i32>,
    /// `sizes[t]` is the member count of topic `t`.
    pub sizes: Vec<usize>,
}

impl TopicAssignment {
    pub fn topic_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l < 0).count()
    }

    /// Member indices of each topic.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.sizes.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            if l >= 0 {
                out[l as usize].push(i);
            }
        }
        out
    }

    /// Builds an assignment from arbitrary cluster ids (negative = noise),
    /// relabeling by descending size.
    pub fn from_raw(raw: &[i64]) -> Self {
        let mut groups: alloc::collections::BTreeMap<i64, (usize, usize)> = Default::default();
        for (i, &c) in raw.iter().enumerate() {
            if c >= 0 {
                let slot = groups.entry(c).or_insert((0, i));
                slot.0 += 1;
            }
        }
        let mut order: Vec<(i64, usize, usize)> =
            groups.into_iter().map(|(c, (size, first))| (c, size, first)).collect();
        order.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
        let mut relabel = alloc::collections::BTreeMap::new();
        for (new, &(c, _, _)) in order.iter().enumerate() {
            relabel.insert(c, new as i32);
        }
        TopicAssignment {
            labels: raw.iter().map(|c| relabel.get(c).copied().unwrap_or(-1)).collect(),
            sizes: order.iter().map(|&(_, size, _)| size).collect(),
        }
    }
}

/// A strategy that groups embedding vectors into topics.
pub trait Clusterer {
    fn cluster(&self, points: &[Vec<f64>]) -> Result<TopicAssignment>;
}

/// Classical DBSCAN with Euclidean distance.
///
/// A point is a core point when at least `min_pts` points (itself included)
/// lie within `eps`. Clusters are the connected components of core points;
/// a non-core point within `eps` of some core point joins the cluster of its
/// nearest such core point, all other points are noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dbscan {
    pub eps: f64,
    pub min_pts: usize,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl Clusterer for Dbscan {
    fn cluster(&self, points: &[Vec<f64>]) -> Result<TopicAssignment> {
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(Error::InvalidParameter("eps must be positive"));
        }
        if self.min_pts < 2 {
            return Err(Error::InvalidParameter("min_pts must be at least 2"));
        }
        let n = points.len();
        if n == 0 {
            return Ok(TopicAssignment::default());
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidParameter("embeddings differ in dimension"));
        }
        let eps2 = self.eps * self.eps;
        let neighbors: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| dist2(&points[i], &points[j]) <= eps2).collect())
            .collect();
        let core: Vec<bool> = neighbors.iter().map(|nb| nb.len() >= self.min_pts).collect();

        let mut raw = alloc::vec![-1i64; n];
        let mut next = 0i64;
        for start in 0..n {
            if !core[start] || raw[start] >= 0 {
                continue;
            }
            raw[start] = next;
            let mut stack = alloc::vec![start];
            while let Some(p) = stack.pop() {
                for &q in &neighbors[p] {
                    if core[q] && raw[q] < 0 {
                        raw[q] = next;
                        stack.push(q);
                    }
                }
            }
            next += 1;
        }
        for p in 0..n {
            if core[p] {
                continue;
            }
            let nearest = neighbors[p]
                .iter()
                .filter(|&&q| core[q])
                .min_by(|&&a, &&b| {
                    dist2(&points[p], &points[a]).total_cmp(&dist2(&points[p], &points[b]))
                });
            if let Some(&q) = nearest {
                raw[p] = raw[q];
            }
        }
        Ok(TopicAssignment::from_raw(&raw))
    }
}

/// DBSCAN over `embeddings`; see [`Dbscan`].
pub fn cluster_embeddings(embeddings: &[Vec<f64>], eps: f64, min_pts: usize) -> Result<TopicAssignment> {
    Dbscan { eps, min_pts }.cluster(embeddings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identical_points_form_one_cluster() {
        let pts = vec![vec![1.0, 1.0]; 5];
        let a = cluster_embeddings(&pts, 0.5, 3).unwrap();
        assert_eq!(a.sizes, [5]);
        assert_eq!(a.noise_count(), 0);
    }

    #[test]
    fn isolated_point_is_noise() {
        let a = cluster_embeddings(&[vec![0.0]], 1.0, 2).unwrap();
        assert_eq!(a.labels, [-1]);
        assert_eq!(a.topic_count(), 0);
    }

    #[test]
    fn empty_input() {
        assert_eq!(cluster_embeddings(&[], 1.0, 2).unwrap(), TopicAssignment::default());
    }

    #[test]
    fn border_point_joins_cluster_but_is_not_core() {
        // chain 0 - 0.9 - 1.8: with min_pts 3 only the middle point is core
        let pts = vec![vec![0.0], vec![0.9], vec![1.8], vec![10.0]];
        let a = cluster_embeddings(&pts, 1.0, 3).unwrap();
        assert_eq!(a.labels, [0, 0, 0, -1]);
    }

    #[test]
    fn labels_ordered_by_size() {
        let mut pts = vec![vec![0.0]; 3];
        pts.extend(vec![vec![50.0]; 6]);
        let a = cluster_embeddings(&pts, 1.0, 2).unwrap();
        assert_eq!(a.sizes, [6, 3]);
        assert_eq!(a.labels[0], 1);
        assert_eq!(a.labels[3], 0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(cluster_embeddings(&[vec![0.0]], 0.0, 2).is_err());
        assert!(cluster_embeddings(&[vec![0.0]], 1.0, 1).is_err());
        assert!(cluster_embeddings(&[vec![0.0], vec![0.0, 1.0]], 1.0, 2).is_err());
    }
}
