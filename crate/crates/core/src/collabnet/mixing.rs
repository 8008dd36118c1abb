use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::kg::{KnowledgeGraph, ProjectedGraph};
use crate::topics::PaperTopics;
use crate::{Error, Result};

pub const UNKNOWN: &str = "UNKNOWN";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttributeKind {
    Nationality,
    PrimaryTopic,
}

impl AttributeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AttributeKind::Nationality => "nationality",
            AttributeKind::PrimaryTopic => "primary_topic",
        }
    }
}

/// Modal category of every author over their papers; ties go to the
/// lexicographically smallest category, authors without data get
/// [`UNKNOWN`].
///
/// Nationality counts the author's own affiliation countries on each paper,
/// or the paper's countries when the author lists none. Primary topic
/// counts the topic labels of the author's non-noise papers.
pub fn author_attributes(
    graph: &KnowledgeGraph,
    kind: AttributeKind,
    topics: Option<&PaperTopics>,
) -> BTreeMap<String, String> {
    let mut counts: BTreeMap<&str, BTreeMap<String, usize>> = BTreeMap::new();
    for (_, node, attrs) in graph.papers() {
        for author in &attrs.authors {
            let slot = counts.entry(author.key.as_str()).or_default();
            match kind {
                AttributeKind::Nationality => {
                    let cs = if author.countries.is_empty() { &attrs.countries } else { &author.countries };
                    for c in cs {
                        *slot.entry(c.clone()).or_default() += 1;
                    }
                }
                AttributeKind::PrimaryTopic => {
                    let label = topics.and_then(|t| t.labels.get(&node.node_ref.key)).copied();
                    if let Some(l) = label.filter(|&l| l >= 0) {
                        *slot.entry(l.to_string()).or_default() += 1;
                    }
                }
            }
        }
    }
    counts
        .into_iter()
        .map(|(author, tally)| {
            let modal = tally
                .into_iter()
                .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
                .map_or_else(|| UNKNOWN.to_string(), |(c, _)| c);
            (author.to_string(), modal)
        })
        .collect()
}

/// [`author_attributes`] for one author.
pub fn author_attribute(
    graph: &KnowledgeGraph,
    author: &str,
    kind: AttributeKind,
    topics: Option<&PaperTopics>,
) -> Result<String> {
    author_attributes(graph, kind, topics).remove(author).ok_or_else(|| Error::UnknownNode(author.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssortativityResult {
    pub attribute: String,
    /// `None` when the coefficient is undefined (a single category).
    pub r: Option<f64>,
    pub categories: Vec<String>,
    /// Edge-end fractions, rows and columns in `categories` order.
    pub mixing_matrix: Vec<Vec<f64>>,
    /// Undirected edges counted.
    pub edges: usize,
}

/// Categorical assortativity `(Σ e_ii − Σ a_i b_i) / (1 − Σ a_i b_i)` with
/// every undirected edge counted once in each direction.
///
/// # Panics
/// When `labels` does not hold one entry per node.
pub fn assortativity_categorical<S: AsRef<str>>(
    graph: &ProjectedGraph,
    labels: &[S],
    attribute: &str,
    exclude_unknown: bool,
) -> AssortativityResult {
    assert_eq!(labels.len(), graph.node_count(), "one label per node");
    let mut categories: Vec<String> = labels
        .iter()
        .map(|s| s.as_ref())
        .filter(|s| !(exclude_unknown && *s == UNKNOWN))
        .map(String::from)
        .collect();
    categories.sort();
    categories.dedup();
    let cat_of = |i: usize| categories.binary_search_by(|c| c.as_str().cmp(labels[i].as_ref())).ok();
    let m = categories.len();
    let mut counts = alloc::vec![alloc::vec![0u64; m]; m];
    let mut edges = 0;
    for e in graph.edges() {
        if let (Some(x), Some(y)) = (cat_of(e.a), cat_of(e.b)) {
            counts[x][y] += 1;
            counts[y][x] += 1;
            edges += 1;
        }
    }
    // exact integer form: (M·tr − Σ A_i B_i) / (M² − Σ A_i B_i)
    let total = 2 * edges as u128;
    let trace: u128 = (0..m).map(|i| counts[i][i] as u128).sum();
    let rows: Vec<u128> = counts.iter().map(|r| r.iter().map(|&c| c as u128).sum()).collect();
    let ab: u128 = rows.iter().map(|&a| a * a).sum();
    let denominator = total * total - ab;
    let r = (denominator > 0).then(|| ((total * trace) as f64 - ab as f64) / denominator as f64);
    let mixing_matrix = counts
        .iter()
        .map(|row| row.iter().map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 }).collect())
        .collect();
    AssortativityResult { attribute: attribute.into(), r, categories, mixing_matrix, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::build_graph;
    use crate::record::{AuthorEntry, PaperRecord};
    use alloc::vec;

    #[test]
    fn monochromatic_cliques() {
        let g = ProjectedGraph::undirected(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let r = assortativity_categorical(&g, &["a", "a", "a", "b", "b", "b"], "x", false);
        assert_eq!(r.r, Some(1.0));
        assert_eq!(r.mixing_matrix, [[0.5, 0.0], [0.0, 0.5]]);
    }

    #[test]
    fn complete_bipartite() {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = ProjectedGraph::undirected(6, &edges);
        let r = assortativity_categorical(&g, &["a", "a", "a", "b", "b", "b"], "x", false);
        assert_eq!(r.r, Some(-1.0));
    }

    #[test]
    fn single_category_is_undefined() {
        let g = ProjectedGraph::undirected(3, &[(0, 1), (1, 2)]);
        assert_eq!(assortativity_categorical(&g, &["a"; 3], "x", false).r, None);
    }

    #[test]
    fn unknown_exclusion() {
        let g = ProjectedGraph::undirected(4, &[(0, 1), (2, 3), (1, 2)]);
        let labels = ["a", "a", UNKNOWN, "b"];
        let kept = assortativity_categorical(&g, &labels, "x", true);
        assert_eq!((kept.edges, kept.categories.len()), (1, 2));
        assert_eq!(assortativity_categorical(&g, &labels, "x", false).edges, 3);
    }

    fn paper(id: &str, author: &str, address: &str) -> PaperRecord {
        let mut r = PaperRecord::new(id, id, 2020);
        r.authors = vec![AuthorEntry { name: author.into(), affiliations: vec![address.into()] }];
        r
    }

    #[test]
    fn modal_nationality_with_tie() {
        let g = build_graph(&[
            paper("A", "Wei Zhang", "Tsinghua Univ, Beijing, Peoples R China"),
            paper("B", "Wei Zhang", "Univ Oxford, Oxford, England"),
            paper("C", "Ann Lee", "Fudan Univ, Shanghai, China"),
            paper("D", "Ann Lee", "Zhejiang Univ, Hangzhou, China"),
            paper("E", "Bo Chen", "Somewhere"),
        ])
        .unwrap();
        let attrs = author_attributes(&g, AttributeKind::Nationality, None);
        assert_eq!(attrs["wei zhang"], "CN");
        assert_eq!(attrs["ann lee"], "CN");
        assert_eq!(attrs["bo chen"], UNKNOWN);
        assert!(author_attribute(&g, "nobody", AttributeKind::Nationality, None).is_err());
    }

    #[test]
    fn modal_topic() {
        let g = build_graph(&[paper("A", "Ann Lee", ""), paper("B", "Ann Lee", ""), paper("C", "Ann Lee", "")]).unwrap();
        let topics = PaperTopics {
            labels: BTreeMap::from([("A".into(), 1), ("B".into(), 1), ("C".into(), -1)]),
            sizes: vec![0, 2],
        };
        assert_eq!(author_attribute(&g, "ann lee", AttributeKind::PrimaryTopic, Some(&topics)).unwrap(), "1");
        assert_eq!(author_attribute(&g, "ann lee", AttributeKind::PrimaryTopic, None).unwrap(), UNKNOWN);
    }
}
