use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::kg::{project, KnowledgeGraph, ProjectedGraph, Projection};

/// Undirected graph whose nodes and edges carry the year they appeared, so
/// that any yearly snapshot can be queried without copying.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphHistory {
    keys: Vec<String>,
    years: Vec<i32>,
    index: BTreeMap<String, usize>,
    /// Sorted by neighbor.
    adj: Vec<Vec<(usize, i32)>>,
}

impl GraphHistory {
    /// # Panics
    /// On a directed graph.
    pub fn new(graph: &ProjectedGraph) -> Self {
        assert!(!graph.is_directed(), "history graphs are undirected");
        let n = graph.node_count();
        let mut adj = alloc::vec![Vec::new(); n];
        for e in graph.edges() {
            let year = e.year.max(graph.year(e.a)).max(graph.year(e.b));
            adj[e.a].push((e.b, year));
            adj[e.b].push((e.a, year));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let index = graph.keys().iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        GraphHistory { keys: graph.keys().to_vec(), years: graph.years().to_vec(), index, adj }
    }

    /// Keyword co-occurrence history of a knowledge graph.
    pub fn keywords(graph: &KnowledgeGraph) -> Self {
        Self::new(&project(graph, Projection::KeywordCooccurrence))
    }

    pub fn node_count(&self) -> usize {
        self.keys.len()
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn year_range(&self) -> Option<(i32, i32)> {
        Some((*self.years.iter().min()?, *self.years.iter().max()?))
    }

    pub fn exists(&self, i: usize, year: i32) -> bool {
        self.years[i] <= year
    }

    /// Nodes present at `year`, ascending.
    pub fn nodes_at(&self, year: i32) -> Vec<usize> {
        (0..self.keys.len()).filter(|&i| self.exists(i, year)).collect()
    }

    pub fn neighbors_at(&self, i: usize, year: i32) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().filter(move |&&(_, y)| y <= year).map(|&(v, _)| v)
    }

    pub fn degree_at(&self, i: usize, year: i32) -> usize {
        self.adj[i].iter().filter(|&&(_, y)| y <= year).count()
    }

    /// Year the edge `u–v` appeared.
    pub fn edge_year(&self, u: usize, v: usize) -> Option<i32> {
        let list = &self.adj[u];
        list.binary_search_by(|&(w, _)| w.cmp(&v)).ok().map(|p| list[p].1)
    }

    pub fn connected_at(&self, u: usize, v: usize, year: i32) -> bool {
        self.edge_year(u, v).is_some_and(|y| y <= year)
    }

    /// Edges `(u, v, year)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&(v, _)| u < v).map(move |&(v, y)| (u, v, y)))
    }
}
