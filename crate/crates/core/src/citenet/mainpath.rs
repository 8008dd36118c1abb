use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::rank::{EssentialRanker, MutualReinforcement, RankInput};
use crate::kg::{project, KnowledgeGraph, ProjEdge, ProjectedGraph, Projection};
use crate::math;
use crate::{Error, Result};

/// Citation graph with cycles broken.
#[derive(Debug, Clone, PartialEq)]
pub struct CitationDag {
    pub dag: ProjectedGraph,
    /// `(citing, cited)` keys of removed edges.
    pub dropped: Vec<(String, String)>,
}

/// Drops citations to later papers, then same-year citations that would
/// close a cycle (in edge order).
pub fn citation_dag(citations: &ProjectedGraph) -> CitationDag {
    let n = citations.node_count();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut same_year = Vec::new();
    for e in citations.edges() {
        let (ya, yb) = (citations.year(e.a), citations.year(e.b));
        if ya < yb {
            dropped.push(*e);
        } else if ya == yb {
            same_year.push(*e);
        } else {
            kept.push(*e);
        }
    }
    // Cycles can only run through same-year edges.
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for e in same_year {
        if reaches(&adj, e.b, e.a) {
            dropped.push(e);
        } else {
            adj[e.a].push(e.b);
            kept.push(e);
        }
    }
    let nodes = citations.keys().iter().cloned().zip(citations.years().iter().copied()).collect();
    let mut dropped: Vec<(String, String)> =
        dropped.iter().map(|e| (citations.key(e.a).into(), citations.key(e.b).into())).collect();
    dropped.sort();
    CitationDag { dag: ProjectedGraph::new(true, nodes, kept), dropped }
}

fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = alloc::vec![false; adj.len()];
    let mut stack = alloc::vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        if !core::mem::replace(&mut seen[u], true) {
            stack.extend_from_slice(&adj[u]);
        }
    }
    false
}

/// Nodes in topological order (sources first), or [`Error::Cycle`].
pub fn topological_order(dag: &ProjectedGraph) -> Result<Vec<usize>> {
    let n = dag.node_count();
    let mut indegree: Vec<usize> = (0..n).map(|i| dag.in_degree(i)).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop_first() {
        order.push(u);
        for &(v, _) in dag.neighbors(u) {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.insert(v);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(Error::Cycle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrimMode {
    /// Remove `u→w` when some `u→v→w` exists.
    #[default]
    OneHop,
    /// Full transitive reduction.
    Full,
}

/// Removes citations implied by other citations. Reachability between
/// nodes is preserved.
pub fn trim_network(dag: &ProjectedGraph, mode: TrimMode) -> Result<ProjectedGraph> {
    if !dag.is_directed() {
        return Err(Error::InvalidParameter("trim_network needs a directed graph"));
    }
    let order = topological_order(dag)?;
    let n = dag.node_count();
    let mut kept = Vec::with_capacity(dag.edge_count());
    let mut implied = alloc::vec![false; n];
    for &u in &order {
        implied.iter_mut().for_each(|x| *x = false);
        let out = dag.neighbors(u);
        match mode {
            TrimMode::OneHop => {
                for &(v, _) in out {
                    for &(w, _) in dag.neighbors(v) {
                        implied[w] = true;
                    }
                }
            }
            TrimMode::Full => {
                let mut stack: Vec<usize> =
                    out.iter().flat_map(|&(v, _)| dag.neighbors(v).iter().map(|&(w, _)| w)).collect();
                while let Some(w) = stack.pop() {
                    if !core::mem::replace(&mut implied[w], true) {
                        stack.extend(dag.neighbors(w).iter().map(|&(x, _)| x));
                    }
                }
            }
        }
        for &(w, weight) in out {
            if !implied[w] {
                kept.push(ProjEdge { a: u, b: w, weight, year: edge_year(dag, u, w) });
            }
        }
    }
    let nodes = dag.keys().iter().cloned().zip(dag.years().iter().copied()).collect();
    Ok(ProjectedGraph::new(true, nodes, kept))
}

fn edge_year(g: &ProjectedGraph, a: usize, b: usize) -> i32 {
    let pos = g.edges().binary_search_by(|e| (e.a, e.b).cmp(&(a, b))).expect("edge exists");
    g.edges()[pos].year
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CocitationNorm {
    /// `(c − min)/(max − min)` over the surviving edges; `1` for every edge
    /// when all counts are equal and positive, `0` when all are zero.
    #[default]
    MinMax,
    /// Standard normal CDF of the z-score; `0.5` when all counts are equal.
    ZScore,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackboneNode {
    pub id: String,
    pub score: f64,
    pub year: i32,
    /// In-corpus citations received.
    pub citations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackboneEdge {
    pub src: String,
    pub dst: String,
    pub weight: f64,
    pub cocitations: usize,
    pub jaccard: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BackboneGraph {
    pub nodes: Vec<BackboneNode>,
    pub edges: Vec<BackboneEdge>,
}

/// Weights each edge of `trimmed` by normalized co-citation count and the
/// Jaccard similarity of the endpoints' reference sets, both taken from
/// `full`. Node scores are left at zero.
///
/// # Panics
/// When a node of `trimmed` is missing from `full`.
pub fn weight_edges(trimmed: &ProjectedGraph, full: &ProjectedGraph, norm: CocitationNorm) -> BackboneGraph {
    let to_full: Vec<usize> = trimmed
        .keys()
        .iter()
        .map(|k| full.index_of(k).unwrap_or_else(|| panic!("`{k}` missing from the full graph")))
        .collect();
    let nodes = to_full
        .iter()
        .map(|&f| BackboneNode {
            id: full.key(f).into(),
            score: 0.0,
            year: full.year(f),
            citations: full.in_degree(f),
        })
        .collect();
    let raw: Vec<(usize, usize, usize, f64)> = trimmed
        .edges()
        .iter()
        .map(|e| {
            let (u, v) = (to_full[e.a], to_full[e.b]);
            (e.a, e.b, cocitations(full, u, v), reference_jaccard(full, u, v))
        })
        .collect();
    let counts: Vec<f64> = raw.iter().map(|r| r.2 as f64).collect();
    let normalized = normalize_counts(&counts, norm);
    let edges = raw
        .iter()
        .zip(normalized)
        .map(|(&(a, b, cocitations, jaccard), c)| BackboneEdge {
            src: trimmed.key(a).into(),
            dst: trimmed.key(b).into(),
            weight: (c + jaccard) / 2.0,
            cocitations,
            jaccard,
        })
        .collect();
    BackboneGraph { nodes, edges }
}

/// Papers citing both `u` and `v`.
pub fn cocitations(graph: &ProjectedGraph, u: usize, v: usize) -> usize {
    sorted_overlap(graph.in_neighbors(u), graph.in_neighbors(v))
}

/// Jaccard similarity of the reference sets of `u` and `v`; 0 when both
/// are empty.
pub fn reference_jaccard(graph: &ProjectedGraph, u: usize, v: usize) -> f64 {
    let (ru, rv) = (graph.neighbors(u), graph.neighbors(v));
    let common = sorted_overlap(ru, rv);
    let union = ru.len() + rv.len() - common;
    if union == 0 {
        0.0
    } else {
        common as f64 / union as f64
    }
}

fn sorted_overlap(a: &[(usize, f64)], b: &[(usize, f64)]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn normalize_counts(counts: &[f64], norm: CocitationNorm) -> Vec<f64> {
    if counts.is_empty() {
        return Vec::new();
    }
    match norm {
        CocitationNorm::MinMax => {
            let lo = counts.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = counts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi == lo {
                let v = if hi > 0.0 { 1.0 } else { 0.0 };
                return alloc::vec![v; counts.len()];
            }
            counts.iter().map(|c| (c - lo) / (hi - lo)).collect()
        }
        CocitationNorm::ZScore => {
            let m = math::mean(counts);
            let var = counts.iter().map(|c| (c - m) * (c - m)).sum::<f64>() / counts.len() as f64;
            if var == 0.0 {
                return alloc::vec![0.5; counts.len()];
            }
            let sd = math::sqrt(var);
            counts.iter().map(|c| math::normal_cdf((c - m) / sd)).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackboneConfig {
    pub k: usize,
    pub trim: TrimMode,
    pub norm: CocitationNorm,
}

impl Default for BackboneConfig {
    fn default() -> Self {
        BackboneConfig { k: 40, trim: TrimMode::OneHop, norm: CocitationNorm::MinMax }
    }
}

/// Top-`k` papers by score, ties broken by key.
pub fn top_k<'a>(scores: impl IntoIterator<Item = (&'a String, &'a f64)>, k: usize) -> Vec<(String, f64)> {
    let mut ranked: Vec<(&String, f64)> = scores.into_iter().map(|(key, &s)| (key, s)).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.truncate(k);
    ranked.into_iter().map(|(key, s)| (key.clone(), s)).collect()
}

/// Rank, keep the top `k` papers, trim their induced citation subgraph and
/// weight the surviving edges.
pub fn main_path_backbone_with(
    graph: &KnowledgeGraph,
    ranker: &impl EssentialRanker,
    config: &BackboneConfig,
) -> Result<BackboneGraph> {
    if config.k < 2 {
        return Err(Error::InvalidParameter("backbone size k must be at least 2"));
    }
    let scores = ranker.rank(&RankInput::from_graph(graph))?;
    let top = top_k(&scores.papers, config.k);
    let full = project(graph, Projection::Citation);
    let dag = citation_dag(&full).dag;
    let members: Vec<usize> = top.iter().map(|(key, _)| dag.index_of(key).expect("ranked paper")).collect();
    let trimmed = trim_network(&dag.induced(&members), config.trim)?;
    let mut backbone = weight_edges(&trimmed, &full, config.norm);
    for (node, (_, score)) in backbone.nodes.iter_mut().zip(&top) {
        node.score = *score;
    }
    Ok(backbone)
}

/// [`main_path_backbone_with`] using the default ranker, one-hop trimming
/// and min-max co-citation normalization.
pub fn main_path_backbone(graph: &KnowledgeGraph, k: usize) -> Result<BackboneGraph> {
    main_path_backbone_with(graph, &MutualReinforcement::default(), &BackboneConfig { k, ..Default::default() })
}
