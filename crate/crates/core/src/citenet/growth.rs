use alloc::vec::Vec;

use crate::kg::ProjectedGraph;

/// Cumulative node and edge counts of yearly snapshots.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrowthSeries {
    pub years: Vec<i32>,
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

impl GrowthSeries {
    pub fn len(&self) -> usize {
        self.years.len()
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }
}

/// Node and edge totals at the end of every year between the first and last
/// node year.
pub fn growth_series(graph: &ProjectedGraph) -> GrowthSeries {
    let Some((first, last)) = graph.year_range() else {
        return GrowthSeries::default();
    };
    let span = (last - first) as usize + 1;
    let mut node_new = alloc::vec![0usize; span];
    let mut edge_new = alloc::vec![0usize; span];
    for &y in graph.years() {
        node_new[(y - first) as usize] += 1;
    }
    for e in graph.edges() {
        let y = e.year.max(graph.year(e.a)).max(graph.year(e.b)).clamp(first, last);
        edge_new[(y - first) as usize] += 1;
    }
    let mut out = GrowthSeries::default();
    let (mut n, mut m) = (0, 0);
    for i in 0..span {
        n += node_new[i];
        m += edge_new[i];
        out.years.push(first + i as i32);
        out.nodes.push(n);
        out.edges.push(m);
    }
    out
}
