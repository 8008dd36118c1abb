use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::kg::ProjectedGraph;
use crate::{Error, Result};

/// PageRank with weight-proportional transitions. Undirected edges act as
/// reciprocal directed pairs; the mass of nodes without edges is spread
/// uniformly.
pub fn pagerank(graph: &ProjectedGraph, damping: f64, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidParameter("damping must lie in (0, 1)"));
    }
    if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
        return Err(Error::InvalidParameter("tol and max_iter must be positive"));
    }
    let n = graph.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let strength: Vec<f64> = (0..n).map(|i| graph.neighbors(i).iter().map(|&(_, w)| w).sum()).collect();
    let mut p = alloc::vec![1.0 / n as f64; n];
    let mut next = alloc::vec![0.0; n];
    for iteration in 1..=max_iter {
        let dangling: f64 = (0..n).filter(|&i| strength[i] <= 0.0).map(|i| p[i]).sum();
        let base = (1.0 - damping) / n as f64 + damping * dangling / n as f64;
        next.iter_mut().for_each(|x| *x = base);
        for j in 0..n {
            if strength[j] > 0.0 {
                let share = damping * p[j] / strength[j];
                for &(i, w) in graph.neighbors(j) {
                    next[i] += share * w;
                }
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let residual = p.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        core::mem::swap(&mut p, &mut next);
        if residual < tol {
            return Ok(p);
        }
        if iteration == max_iter {
            return Err(Error::NotConverged { iterations: iteration, residual });
        }
    }
    unreachable!("max_iter is positive")
}

/// Shortest-path betweenness over hop distances (Brandes), normalized by
/// the number of node pairs excluding the node itself.
pub fn betweenness(graph: &ProjectedGraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut score = alloc::vec![0.0; n];
    let mut sigma = alloc::vec![0f64; n];
    let mut dist = alloc::vec![usize::MAX; n];
    let mut delta = alloc::vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    let mut stack = Vec::with_capacity(n);
    for s in 0..n {
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        delta.iter_mut().for_each(|x| *x = 0.0);
        preds.iter_mut().for_each(Vec::clear);
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &(w, _) in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    if n > 2 {
        // every undirected pair was visited from both ends
        let pairs = ((n - 1) * (n - 2)) as f64;
        score.iter_mut().for_each(|x| *x /= pairs);
    } else {
        score.iter_mut().for_each(|x| *x = 0.0);
    }
    score
}
