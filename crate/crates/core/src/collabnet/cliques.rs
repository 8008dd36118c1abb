use alloc::vec::Vec;

use crate::kg::ProjectedGraph;

/// Number of `k`-node complete subgraphs, by extending cliques only with
/// higher-index common neighbors.
pub fn count_k_cliques(graph: &ProjectedGraph, k: usize) -> u64 {
    let n = graph.node_count();
    match k {
        0 => return 1,
        1 => return n as u64,
        _ => {}
    }
    let higher: Vec<Vec<usize>> = (0..n)
        .map(|u| graph.neighbors(u).iter().map(|&(v, _)| v).filter(|&v| v > u).collect())
        .collect();
    let mut total = 0;
    for u in 0..n {
        total += extend(&higher, &higher[u], k - 1);
    }
    total
}

fn extend(higher: &[Vec<usize>], candidates: &[usize], remaining: usize) -> u64 {
    if remaining == 1 {
        return candidates.len() as u64;
    }
    let mut total = 0;
    for (i, &v) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|w| higher[v].binary_search(w).is_ok()).collect();
        if next.len() + 1 >= remaining {
            total += extend(higher, &next, remaining - 1);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> ProjectedGraph {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        ProjectedGraph::undirected(n, &edges)
    }

    #[test]
    fn k5_counts() {
        let g = complete(5);
        assert_eq!(count_k_cliques(&g, 3), 10);
        assert_eq!(count_k_cliques(&g, 4), 5);
        assert_eq!(count_k_cliques(&g, 5), 1);
        assert_eq!(count_k_cliques(&g, 6), 0);
        assert_eq!(count_k_cliques(&g, 2), 10);
    }

    #[test]
    fn triangle_free() {
        let c6: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = ProjectedGraph::undirected(6, &c6);
        assert_eq!(count_k_cliques(&g, 3), 0);
        assert_eq!(count_k_cliques(&g, 4), 0);
    }
}
