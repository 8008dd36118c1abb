use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::kg::ProjectedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentReport {
    /// Descending.
    pub sizes: Vec<usize>,
    pub count: usize,
    pub largest_size: usize,
    pub diameter_of_largest: usize,
}

/// Component id of every node. Components are numbered by their smallest
/// member.
pub fn component_labels(graph: &ProjectedGraph) -> Vec<usize> {
    let n = graph.node_count();
    let mut label = alloc::vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = alloc::vec![start];
        while let Some(u) = stack.pop() {
            for &(v, _) in graph.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

/// Members of the largest connected component, ascending. Among equally
/// large components the one with the smallest member wins.
pub fn largest_component(graph: &ProjectedGraph) -> Vec<usize> {
    let labels = component_labels(graph);
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in &labels {
        *sizes.entry(l).or_default() += 1;
    }
    let Some(best) = sizes.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(&l, _)| l) else {
        return Vec::new();
    };
    (0..labels.len()).filter(|&i| labels[i] == best).collect()
}

pub fn components(graph: &ProjectedGraph) -> ComponentReport {
    let labels = component_labels(graph);
    let mut sizes = alloc::vec![0usize; labels.iter().map(|&l| l + 1).max().unwrap_or(0)];
    for &l in &labels {
        sizes[l] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ComponentReport {
        count: sizes.len(),
        largest_size: sizes.first().copied().unwrap_or(0),
        diameter_of_largest: diameter_lcc(graph),
        sizes,
    }
}

/// Hop distances from `source`; `None` for unreachable nodes.
pub fn bfs_distances(graph: &ProjectedGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = alloc::vec![None; graph.node_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or(0) + 1;
        for &(v, _) in graph.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn eccentricity(graph: &ProjectedGraph, source: usize) -> usize {
    bfs_distances(graph, source).into_iter().flatten().max().unwrap_or(0)
}

/// Longest shortest path inside the largest connected component; 0 for an
/// empty graph.
pub fn diameter_lcc(graph: &ProjectedGraph) -> usize {
    largest_component(graph).into_iter().map(|s| eccentricity(graph, s)).max().unwrap_or(0)
}

/// Highest-degree node of the largest component, ties broken by key.
pub fn hop_source(graph: &ProjectedGraph) -> Option<usize> {
    largest_component(graph)
        .into_iter()
        .max_by(|&a, &b| graph.degree(a).cmp(&graph.degree(b)).then_with(|| graph.key(b).cmp(graph.key(a))))
}

/// `(k, fraction of the largest component within k hops of the hop source)`
/// for `k = 0..=eccentricity`.
pub fn hop_coverage(graph: &ProjectedGraph) -> Vec<(usize, f64)> {
    let Some(source) = hop_source(graph) else {
        return Vec::new();
    };
    let dist: Vec<usize> = bfs_distances(graph, source).into_iter().flatten().collect();
    let ecc = dist.iter().copied().max().unwrap_or(0);
    let mut per_layer = alloc::vec![0usize; ecc + 1];
    for d in &dist {
        per_layer[*d] += 1;
    }
    let total = dist.len() as f64;
    let mut reached = 0;
    per_layer
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            reached += c;
            (k, if reached == dist.len() { 1.0 } else { reached as f64 / total })
        })
        .collect()
}

/// Number of nodes per degree, over the whole graph or the largest
/// component only.
pub fn degree_distribution(graph: &ProjectedGraph, largest_only: bool) -> BTreeMap<usize, usize> {
    let members: Vec<usize> =
        if largest_only { largest_component(graph) } else { (0..graph.node_count()).collect() };
    let mut out = BTreeMap::new();
    for i in members {
        *out.entry(graph.degree(i)).or_default() += 1;
    }
    out
}
