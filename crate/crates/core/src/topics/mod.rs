//! Topic modeling over a knowledge graph: density clustering of supplied
//! embeddings, class-based TF-IDF labels, a centroid dendrogram, query-based
//! multi-label assignment, yearly trends and theme linkage.

mod cluster;
mod ctfidf;
mod hierarchy;
mod linkage;
mod query;
mod trend;

pub use cluster::{cluster_embeddings, Clusterer, Dbscan, TopicAssignment};
pub use ctfidf::{ctfidf, ctfidf_scores};
pub use hierarchy::{hierarchical_topics, DendroNode, Dendrogram, Merge};
pub use linkage::{topic_linkage, LinkageMatrix};
pub use query::{assign_by_query, parse_query_file, Expr, Query};
pub use trend::{emerging_topics, single_labels, topic_trend, Emerging, TrendMode};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::kg::KnowledgeGraph;
use crate::text::content_tokens;
use crate::Result;

/// Topic labels of every corpus paper; papers without an embedding are
/// noise (`-1`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PaperTopics {
    pub labels: BTreeMap<String, i32>,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopicSummary {
    pub topic: i32,
    /// Descending c-TF-IDF score.
    pub top_terms: Vec<(String, f64)>,
    pub size: usize,
}

/// Clusters the papers that carry an embedding.
pub fn cluster_papers(graph: &KnowledgeGraph, clusterer: &impl Clusterer) -> Result<PaperTopics> {
    let mut ids = Vec::new();
    let mut points = Vec::new();
    let mut labels = BTreeMap::new();
    for (_, node, attrs) in graph.papers() {
        labels.insert(node.node_ref.key.clone(), -1);
        if let Some(e) = &attrs.embedding {
            ids.push(node.node_ref.key.clone());
            points.push(e.clone());
        }
    }
    let assignment = clusterer.cluster(&points)?;
    for (id, label) in ids.into_iter().zip(assignment.labels) {
        labels.insert(id, label);
    }
    Ok(PaperTopics { labels, sizes: assignment.sizes })
}

/// Content tokens of title and abstract for each topic; noise is left out.
pub fn topic_documents(graph: &KnowledgeGraph, topics: &PaperTopics) -> BTreeMap<i32, Vec<String>> {
    let mut docs: BTreeMap<i32, Vec<String>> =
        (0..topics.sizes.len() as i32).map(|t| (t, Vec::new())).collect();
    for (_, node, attrs) in graph.papers() {
        match topics.labels.get(&node.node_ref.key) {
            Some(&t) if t >= 0 => {
                let doc = docs.entry(t).or_default();
                doc.extend(content_tokens(&attrs.title));
                doc.extend(content_tokens(&attrs.abstract_text));
            }
            _ => {}
        }
    }
    docs
}

/// c-TF-IDF labels of every topic.
pub fn summarize_topics(
    graph: &KnowledgeGraph,
    topics: &PaperTopics,
    top_n: usize,
) -> Vec<TopicSummary> {
    ctfidf(&topic_documents(graph, topics), top_n)
        .into_iter()
        .map(|(topic, top_terms)| TopicSummary {
            topic,
            top_terms,
            size: topics.sizes[topic as usize],
        })
        .collect()
}

/// Mean embedding of each topic's members.
pub fn topic_centroids(graph: &KnowledgeGraph, topics: &PaperTopics) -> Vec<Vec<f64>> {
    let mut sums: Vec<Vec<f64>> = Vec::new();
    let mut counts = alloc::vec![0usize; topics.sizes.len()];
    for (_, node, attrs) in graph.papers() {
        let (Some(&t), Some(e)) = (topics.labels.get(&node.node_ref.key), &attrs.embedding) else {
            continue;
        };
        if t < 0 {
            continue;
        }
        if sums.is_empty() {
            sums = alloc::vec![alloc::vec![0.0; e.len()]; topics.sizes.len()];
        }
        for (s, v) in sums[t as usize].iter_mut().zip(e) {
            *s += v;
        }
        counts[t as usize] += 1;
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        s.iter_mut().for_each(|v| *v /= c.max(1) as f64);
    }
    sums
}
