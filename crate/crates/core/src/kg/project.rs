//! Homogeneous views of the knowledge graph.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{EdgeType, KnowledgeGraph, NodeType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Projection {
    /// Directed paper → cited-paper graph.
    Citation,
    /// Undirected author graph weighted by joint-paper count.
    Coauthorship,
    /// Undirected keyword graph; an edge exists when one paper carries both.
    KeywordCooccurrence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjEdge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
    pub year: i32,
}

/// Single-type graph with year stamps on nodes and edges.
///
/// Undirected graphs store each edge once with `a < b`; adjacency lists hold
/// both directions. Adjacency lists are sorted by neighbor index.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedGraph {
    directed: bool,
    keys: Vec<String>,
    years: Vec<i32>,
    index: BTreeMap<String, usize>,
    edges: Vec<ProjEdge>,
    out_adj: Vec<Vec<(usize, f64)>>,
    in_adj: Vec<Vec<(usize, f64)>>,
}

impl ProjectedGraph {
    /// Builds a graph from node `(key, year)` pairs and edges between node
    /// indices. Self-loops are dropped. Parallel edges are merged: weights
    /// add up and the earliest year is kept.
    ///
    /// # Panics
    /// On duplicate keys or out-of-range edge endpoints.
    pub fn new(directed: bool, nodes: Vec<(String, i32)>, edges: Vec<ProjEdge>) -> Self {
        let n = nodes.len();
        let mut index = BTreeMap::new();
        let mut keys = Vec::with_capacity(n);
        let mut years = Vec::with_capacity(n);
        for (i, (key, year)) in nodes.into_iter().enumerate() {
            assert!(index.insert(key.clone(), i).is_none(), "duplicate node key `{key}`");
            keys.push(key);
            years.push(year);
        }
        let mut merged: BTreeMap<(usize, usize), (f64, i32)> = BTreeMap::new();
        for e in edges {
            assert!(e.a < n && e.b < n, "edge endpoint out of range");
            if e.a == e.b {
                continue;
            }
            let pair = if directed || e.a < e.b { (e.a, e.b) } else { (e.b, e.a) };
            let slot = merged.entry(pair).or_insert((0.0, e.year));
            slot.0 += e.weight;
            slot.1 = slot.1.min(e.year);
        }
        let edges: Vec<ProjEdge> = merged
            .into_iter()
            .map(|((a, b), (weight, year))| ProjEdge { a, b, weight, year })
            .collect();
        let mut out_adj = alloc::vec![Vec::new(); n];
        let mut in_adj = alloc::vec![Vec::new(); if directed { n } else { 0 }];
        for e in &edges {
            out_adj[e.a].push((e.b, e.weight));
            if directed {
                in_adj[e.b].push((e.a, e.weight));
            } else {
                out_adj[e.b].push((e.a, e.weight));
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_by_key(|&(v, _)| v);
        }
        ProjectedGraph { directed, keys, years, index, edges, out_adj, in_adj }
    }

    /// Unweighted undirected graph on `n` nodes keyed `n000`, `n001`, …
    /// with every node and edge in year 0. Handy for tests and simulations.
    pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_pairs(false, n, edges.iter().map(|&(a, b)| (a, b, 1.0)))
    }

    /// Weighted undirected variant of [`ProjectedGraph::undirected`].
    pub fn weighted(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        Self::from_pairs(false, n, edges.iter().copied())
    }

    /// Directed variant of [`ProjectedGraph::undirected`].
    pub fn directed(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_pairs(true, n, edges.iter().map(|&(a, b)| (a, b, 1.0)))
    }

    fn from_pairs(directed: bool, n: usize, edges: impl Iterator<Item = (usize, usize, f64)>) -> Self {
        let nodes = (0..n).map(|i| (alloc::format!("n{i:03}"), 0)).collect();
        let edges = edges.map(|(a, b, weight)| ProjEdge { a, b, weight, year: 0 }).collect();
        Self::new(directed, nodes, edges)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.keys.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn year(&self, i: usize) -> i32 {
        self.years[i]
    }

    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn edges(&self) -> &[ProjEdge] {
        &self.edges
    }

    /// Out-neighbors (directed) or neighbors (undirected) with edge weights.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.out_adj[i]
    }

    /// In-neighbors of a directed graph; neighbors of an undirected one.
    pub fn in_neighbors(&self, i: usize) -> &[(usize, f64)] {
        if self.directed {
            &self.in_adj[i]
        } else {
            &self.out_adj[i]
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.out_adj[i].len()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.in_neighbors(i).len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.out_adj[a].binary_search_by_key(&b, |&(v, _)| v).is_ok()
    }

    pub fn edge_weight(&self, a: usize, b: usize) -> Option<f64> {
        let list = &self.out_adj[a];
        list.binary_search_by_key(&b, |&(v, _)| v).ok().map(|i| list[i].1)
    }

    /// Earliest and latest node year.
    pub fn year_range(&self) -> Option<(i32, i32)> {
        let lo = *self.years.iter().min()?;
        let hi = *self.years.iter().max()?;
        Some((lo, hi))
    }

    /// Nodes and edges stamped `year` or earlier, in the original relative
    /// order. Edge weights are carried over unchanged; take a
    /// [`KnowledgeGraph::snapshot`] first when weights must reflect the year.
    pub fn until(&self, year: i32) -> ProjectedGraph {
        let mut remap = alloc::vec![usize::MAX; self.keys.len()];
        let mut nodes = Vec::new();
        for (i, (key, &y)) in self.keys.iter().zip(&self.years).enumerate() {
            if y <= year {
                remap[i] = nodes.len();
                nodes.push((key.clone(), y));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.year <= year && remap[e.a] != usize::MAX && remap[e.b] != usize::MAX)
            .map(|e| ProjEdge { a: remap[e.a], b: remap[e.b], ..*e })
            .collect();
        ProjectedGraph::new(self.directed, nodes, edges)
    }

    /// Subgraph induced by `members` (indices into this graph), in the given
    /// order.
    pub fn induced(&self, members: &[usize]) -> ProjectedGraph {
        let mut remap = alloc::vec![usize::MAX; self.keys.len()];
        let nodes = members
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                remap[old] = new;
                (self.keys[old].clone(), self.years[old])
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| remap[e.a] != usize::MAX && remap[e.b] != usize::MAX)
            .map(|e| ProjEdge { a: remap[e.a], b: remap[e.b], ..*e })
            .collect();
        ProjectedGraph::new(self.directed, nodes, edges)
    }
}

/// Projects the knowledge graph onto one node type. Nodes are ordered by key.
pub fn project(graph: &KnowledgeGraph, kind: Projection) -> ProjectedGraph {
    match kind {
        Projection::Citation => from_typed_edges(graph, NodeType::Paper, EdgeType::Cites, true),
        Projection::Coauthorship => {
            from_typed_edges(graph, NodeType::Author, EdgeType::CoauthorsWith, false)
        }
        Projection::KeywordCooccurrence => keyword_cooccurrence(graph),
    }
}

fn from_typed_edges(
    graph: &KnowledgeGraph,
    node_type: NodeType,
    edge_type: EdgeType,
    directed: bool,
) -> ProjectedGraph {
    let mut members: Vec<(&str, usize, i32)> = graph
        .nodes_of(node_type)
        .map(|(id, n)| (n.node_ref.key.as_str(), id.0, n.year))
        .collect();
    members.sort();
    let mut remap = BTreeMap::new();
    let nodes = members
        .iter()
        .enumerate()
        .map(|(i, &(key, id, year))| {
            remap.insert(id, i);
            (String::from(key), year)
        })
        .collect();
    let edges = graph
        .edges_of(edge_type)
        .map(|e| ProjEdge { a: remap[&e.src.0], b: remap[&e.dst.0], weight: e.weight, year: e.year })
        .collect();
    ProjectedGraph::new(directed, nodes, edges)
}

fn keyword_cooccurrence(graph: &KnowledgeGraph) -> ProjectedGraph {
    let mut first_year: BTreeMap<&str, i32> = BTreeMap::new();
    for (_, node, attrs) in graph.papers() {
        for kw in &attrs.text_keywords {
            let y = first_year.entry(kw.as_str()).or_insert(node.year);
            *y = (*y).min(node.year);
        }
    }
    let index: BTreeMap<&str, usize> =
        first_year.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut edges = Vec::new();
    for (_, node, attrs) in graph.papers() {
        let ids: Vec<usize> = attrs.text_keywords.iter().map(|k| index[k.as_str()]).collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                edges.push(ProjEdge { a, b, weight: 1.0, year: node.year });
            }
        }
    }
    let nodes = first_year.into_iter().map(|(k, y)| (String::from(k), y)).collect();
    ProjectedGraph::new(false, nodes, edges)
}
