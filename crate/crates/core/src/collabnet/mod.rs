//! Collaboration-network analytics on the co-authorship projection:
//! components, diameter, hop coverage, degree distribution, centralities,
//! clique counts, categorical mixing and the top-active-author subnetwork.

mod centrality;
mod cliques;
mod mixing;
mod structure;

use alloc::string::String;
use alloc::vec::Vec;

pub use centrality::{betweenness, pagerank};
pub use cliques::count_k_cliques;
pub use mixing::{
    assortativity_categorical, author_attribute, author_attributes, AssortativityResult, AttributeKind,
    UNKNOWN,
};
pub use structure::{
    bfs_distances, component_labels, components, degree_distribution, diameter_lcc, eccentricity,
    hop_coverage, hop_source, largest_component, ComponentReport,
};

use crate::kg::{project, KnowledgeGraph, ProjectedGraph, Projection};
use crate::topics::PaperTopics;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig { damping: 0.85, tol: 1e-12, max_iter: 1000 }
    }
}

/// Induced subnetwork of the most central authors.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveSubnetwork {
    /// Nodes in descending PageRank order; node years are entry years.
    pub graph: ProjectedGraph,
    pub pagerank: Vec<f64>,
}

/// Top-`k` nodes by PageRank (ties by key) with the edges among them.
pub fn top_active_subnetwork(graph: &ProjectedGraph, k: usize, config: &PageRankConfig) -> Result<ActiveSubnetwork> {
    if k > graph.node_count() {
        return Err(Error::InvalidParameter("k exceeds the node count"));
    }
    let pr = pagerank(graph, config.damping, config.tol, config.max_iter)?;
    let mut order: Vec<usize> = (0..graph.node_count()).collect();
    order.sort_by(|&a, &b| pr[b].total_cmp(&pr[a]).then_with(|| graph.key(a).cmp(graph.key(b))));
    order.truncate(k);
    Ok(ActiveSubnetwork { graph: graph.induced(&order), pagerank: order.iter().map(|&i| pr[i]).collect() })
}

/// Structure of the cumulative co-authorship network at the end of a year.
#[derive(Debug, Clone, PartialEq)]
pub struct YearlyMetrics {
    pub year: i32,
    pub authors: usize,
    pub edges: usize,
    pub components: ComponentReport,
    pub nationality: AssortativityResult,
    pub topic: Option<AssortativityResult>,
}

/// [`YearlyMetrics`] for every year of the corpus, each computed on the
/// snapshot of that year. Author attributes use the papers of the snapshot.
pub fn yearly_metrics(
    graph: &KnowledgeGraph,
    topics: Option<&PaperTopics>,
    exclude_unknown: bool,
) -> Vec<YearlyMetrics> {
    let Some((first, last)) = graph.year_range() else {
        return Vec::new();
    };
    (first..=last)
        .map(|year| {
            let snap = graph.snapshot(year);
            let coauthors = project(&snap, Projection::Coauthorship);
            let labels = |kind| -> Vec<String> {
                let attrs = author_attributes(&snap, kind, topics);
                coauthors.keys().iter().map(|k| attrs.get(k).cloned().unwrap_or_else(|| UNKNOWN.into())).collect()
            };
            let nationality = assortativity_categorical(
                &coauthors,
                &labels(AttributeKind::Nationality),
                AttributeKind::Nationality.as_str(),
                exclude_unknown,
            );
            let topic = topics.map(|_| {
                assortativity_categorical(
                    &coauthors,
                    &labels(AttributeKind::PrimaryTopic),
                    AttributeKind::PrimaryTopic.as_str(),
                    exclude_unknown,
                )
            });
            YearlyMetrics {
                year,
                authors: coauthors.node_count(),
                edges: coauthors.edge_count(),
                components: components(&coauthors),
                nationality,
                topic,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_graph_when_k_is_n() {
        let g = ProjectedGraph::weighted(4, &[(0, 1, 2.0), (1, 2, 1.0), (2, 3, 1.0)]);
        let sub = top_active_subnetwork(&g, 4, &PageRankConfig::default()).unwrap();
        assert_eq!(sub.graph.edge_count(), 3);
        assert!((sub.pagerank.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(sub.pagerank.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn single_node_subnetwork() {
        let g = ProjectedGraph::undirected(3, &[(0, 1), (1, 2)]);
        let sub = top_active_subnetwork(&g, 1, &PageRankConfig::default()).unwrap();
        assert_eq!(sub.graph.keys(), ["n001"]);
        assert_eq!(sub.graph.edge_count(), 0);
        assert!(top_active_subnetwork(&g, 4, &PageRankConfig::default()).is_err());
    }
}
