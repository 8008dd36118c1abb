//! The heterogeneous bibliographic knowledge graph.
//!
//! Papers, authors, venues, keywords and institutions are typed nodes keyed by
//! a canonical string; typed, weighted, year-stamped edges connect them. A
//! graph is built once from a deduplicated record set and is immutable
//! afterwards, so analyses may share it freely.

mod country;
mod exclusion;
mod project;

pub use country::{infer_countries, infer_country, CountryCode};
pub use exclusion::{apply_exclusions, ExclusionOutcome, ExclusionPolicy, RejectReason};
pub use project::{project, ProjEdge, ProjectedGraph, Projection};

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::record::{Intent, PaperRecord, PubType};
use crate::text::{canonical, contains_phrase, tokens};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeType {
    Paper,
    Author,
    Venue,
    Keyword,
    Institution,
}

impl NodeType {
    pub const ALL: [NodeType; 5] = [
        NodeType::Paper,
        NodeType::Author,
        NodeType::Venue,
        NodeType::Keyword,
        NodeType::Institution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NodeType::Paper => "paper",
            NodeType::Author => "author",
            NodeType::Venue => "venue",
            NodeType::Keyword => "keyword",
            NodeType::Institution => "institution",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Typed canonical key of a node; unique within a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef {
    pub node_type: NodeType,
    pub key: String,
}

impl NodeRef {
    pub fn new(node_type: NodeType, key: impl Into<String>) -> Self {
        NodeRef { node_type, key: key.into() }
    }

    pub fn paper(id: impl Into<String>) -> Self {
        NodeRef::new(NodeType::Paper, id)
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.node_type.as_str(), self.key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeType {
    /// paper → paper it references
    Cites,
    /// author → paper
    AuthorOf,
    /// author → institution
    AffiliatedWith,
    /// paper → venue
    PublishedAt,
    /// paper → keyword
    MentionsKeyword,
    /// author → author, stored once with the smaller key as source
    CoauthorsWith,
}

impl EdgeType {
    pub const ALL: [EdgeType; 6] = [
        EdgeType::Cites,
        EdgeType::AuthorOf,
        EdgeType::AffiliatedWith,
        EdgeType::PublishedAt,
        EdgeType::MentionsKeyword,
        EdgeType::CoauthorsWith,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeType::Cites => "cites",
            EdgeType::AuthorOf => "author_of",
            EdgeType::AffiliatedWith => "affiliated_with",
            EdgeType::PublishedAt => "published_at",
            EdgeType::MentionsKeyword => "mentions_keyword",
            EdgeType::CoauthorsWith => "coauthors_with",
        }
    }

    /// Endpoint types an edge of this type must connect.
    pub fn endpoints(self) -> (NodeType, NodeType) {
        match self {
            EdgeType::Cites => (NodeType::Paper, NodeType::Paper),
            EdgeType::AuthorOf => (NodeType::Author, NodeType::Paper),
            EdgeType::AffiliatedWith => (NodeType::Author, NodeType::Institution),
            EdgeType::PublishedAt => (NodeType::Paper, NodeType::Venue),
            EdgeType::MentionsKeyword => (NodeType::Paper, NodeType::Keyword),
            EdgeType::CoauthorsWith => (NodeType::Author, NodeType::Author),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub edge_type: EdgeType,
    /// Non-negative; joint-paper count for co-authorship, affiliation count
    /// for `affiliated_with`, 1 otherwise.
    pub weight: f64,
    /// Year the edge first appears.
    pub year: i32,
}

/// Per-author information as it appeared on one paper.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperAuthor {
    pub key: String,
    pub countries: Vec<String>,
    /// Canonical institution keys of the listed addresses.
    pub institutions: Vec<String>,
}

/// Attributes carried by paper nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperAttrs {
    pub title: String,
    pub abstract_text: String,
    pub venue: String,
    pub pub_type: PubType,
    pub subject_categories: Vec<String>,
    pub publisher: String,
    pub citation_count: u64,
    pub page_count: u32,
    /// Reference ids that do not resolve inside the corpus.
    pub external_references: Vec<String>,
    /// Authors in byline order with the countries of their listed addresses.
    pub authors: Vec<PaperAuthor>,
    /// Distinct resolved countries over all addresses, sorted.
    pub countries: Vec<String>,
    pub intents: Vec<Option<Intent>>,
    /// Canonical keys of every mentioned keyword.
    pub keywords: Vec<String>,
    /// Keywords that qualify for the co-occurrence network: every extracted
    /// keyword plus author keywords whose tokens occur in the title or
    /// abstract.
    pub text_keywords: Vec<String>,
    pub embedding: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub node_ref: NodeRef,
    /// Display form as first seen in the input.
    pub label: String,
    /// First-appearance year.
    pub year: i32,
    pub paper: Option<Box<PaperAttrs>>,
}

/// Typed multi-entity graph; see the module docs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KnowledgeGraph {
    nodes: Vec<Node>,
    index: BTreeMap<NodeRef, NodeId>,
    edges: Vec<Edge>,
    type_counts: [usize; 5],
}

impl KnowledgeGraph {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_of(&self, edge_type: EdgeType) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.edge_type == edge_type)
    }

    pub fn find(&self, node_ref: &NodeRef) -> Option<NodeId> {
        self.index.get(node_ref).copied()
    }

    pub fn find_paper(&self, id: &str) -> Option<NodeId> {
        self.find(&NodeRef::paper(id))
    }

    pub fn count(&self, node_type: NodeType) -> usize {
        self.type_counts[node_type.index()]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes_of(&self, node_type: NodeType) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.node_ref.node_type == node_type)
            .map(|(i, n)| (NodeId(i), n))
    }

    /// Paper nodes with their attributes.
    pub fn papers(&self) -> impl Iterator<Item = (NodeId, &Node, &PaperAttrs)> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.paper.as_deref().map(|p| (NodeId(i), n, p)))
    }

    pub fn paper_attrs(&self, id: NodeId) -> Option<&PaperAttrs> {
        self.nodes[id.0].paper.as_deref()
    }

    /// `(min_year, max_year)` over paper nodes.
    pub fn year_range(&self) -> Option<(i32, i32)> {
        let mut years = self.papers().map(|(_, n, _)| n.year);
        let first = years.next()?;
        Some(years.fold((first, first), |(lo, hi), y| (lo.min(y), hi.max(y))))
    }

    /// `cites` edges whose source was published before its target
    /// (in-press cross-citations).
    pub fn temporal_anomalies(&self) -> Vec<&Edge> {
        self.edges_of(EdgeType::Cites)
            .filter(|e| self.nodes[e.src.0].year < self.nodes[e.dst.0].year)
            .collect()
    }

    /// Authors of a paper (via `author_of` edges), ascending by node id.
    pub fn authors_of(&self, paper: NodeId) -> Vec<NodeId> {
        self.edges_of(EdgeType::AuthorOf).filter(|e| e.dst == paper).map(|e| e.src).collect()
    }

    /// Induced subgraph of the nodes and edges that exist in `year`.
    ///
    /// Co-authorship weights are re-derived from the surviving papers, so a
    /// snapshot is identical to building the graph from the records published
    /// up to `year`. A year before the corpus yields an empty graph.
    pub fn snapshot(&self, year: i32) -> KnowledgeGraph {
        let mut remap = alloc::vec![None; self.nodes.len()];
        let mut out = KnowledgeGraph::default();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.year <= year {
                remap[i] = Some(out.push_node(node.clone()));
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| e.edge_type != EdgeType::CoauthorsWith && e.year <= year)
            .map(|e| Edge {
                src: remap[e.src.0].expect("edge endpoint precedes edge"),
                dst: remap[e.dst.0].expect("edge endpoint precedes edge"),
                ..e.clone()
            })
            .collect();
        // affiliation weights count papers, so they also need re-deriving
        edges.retain(|e| e.edge_type != EdgeType::AffiliatedWith);
        out.edges = edges;
        out.derive_author_edges();
        out.sort_edges();
        out
    }

    fn push_node(&mut self, node: Node) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.type_counts[node.node_ref.node_type.index()] += 1;
        self.index.insert(node.node_ref.clone(), id);
        self.nodes.push(node);
        id
    }

    fn intern(&mut self, node_type: NodeType, key: String, label: &str, year: i32) -> NodeId {
        let node_ref = NodeRef { node_type, key };
        if let Some(&id) = self.index.get(&node_ref) {
            let node = &mut self.nodes[id.0];
            node.year = node.year.min(year);
            return id;
        }
        self.push_node(Node { node_ref, label: label.trim().to_string(), year, paper: None })
    }

    /// Rebuilds `coauthors_with` and `affiliated_with` edges from the paper
    /// attributes of the papers present in the graph.
    fn derive_author_edges(&mut self) {
        let mut coauthors: BTreeMap<(NodeId, NodeId), (f64, i32)> = BTreeMap::new();
        let mut affiliations: BTreeMap<(NodeId, NodeId), (f64, i32)> = BTreeMap::new();
        for node in &self.nodes {
            let Some(attrs) = node.paper.as_deref() else { continue };
            let mut ids: Vec<NodeId> = attrs
                .authors
                .iter()
                .filter_map(|a| self.index.get(&NodeRef::new(NodeType::Author, a.key.clone())))
                .copied()
                .collect();
            ids.sort();
            ids.dedup();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let (lo, hi) = order_by_key(&self.nodes, a, b);
                    let slot = coauthors.entry((lo, hi)).or_insert((0.0, node.year));
                    slot.0 += 1.0;
                    slot.1 = slot.1.min(node.year);
                }
            }
            for author in &attrs.authors {
                let Some(&a) = self.index.get(&NodeRef::new(NodeType::Author, author.key.clone()))
                else {
                    continue;
                };
                let institutions: BTreeSet<&String> = author.institutions.iter().collect();
                for inst in institutions {
                    if let Some(&i) =
                        self.index.get(&NodeRef::new(NodeType::Institution, inst.clone()))
                    {
                        let slot = affiliations.entry((a, i)).or_insert((0.0, node.year));
                        slot.0 += 1.0;
                        slot.1 = slot.1.min(node.year);
                    }
                }
            }
        }
        for ((src, dst), (weight, year)) in coauthors {
            self.edges.push(Edge { src, dst, edge_type: EdgeType::CoauthorsWith, weight, year });
        }
        for ((src, dst), (weight, year)) in affiliations {
            self.edges.push(Edge { src, dst, edge_type: EdgeType::AffiliatedWith, weight, year });
        }
    }

    fn sort_edges(&mut self) {
        let nodes = &self.nodes;
        self.edges.sort_by(|a, b| {
            (a.edge_type, &nodes[a.src.0].node_ref, &nodes[a.dst.0].node_ref).cmp(&(
                b.edge_type,
                &nodes[b.src.0].node_ref,
                &nodes[b.dst.0].node_ref,
            ))
        });
    }
}

fn order_by_key(nodes: &[Node], a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if nodes[a.0].node_ref.key <= nodes[b.0].node_ref.key {
        (a, b)
    } else {
        (b, a)
    }
}

const INSTITUTION_MARKERS: &[&str] = &[
    "univ", "institut", "college", "academy", "polytechn", "school", "lab", "centre", "center",
    "hospital", "corp", "inc", "ltd", "company", "gmbh", "research", "cnrs", "inria",
];

/// Canonical institution key of a free-text address: the first comma
/// segment that looks like an organisation, else the first segment.
pub fn institution_key(address: &str) -> Option<String> {
    let segments: Vec<&str> =
        address.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let first = *segments.first()?;
    let chosen = segments
        .iter()
        .find(|s| {
            let lower = canonical(s);
            INSTITUTION_MARKERS.iter().any(|m| lower.contains(m))
        })
        .copied()
        .unwrap_or(first);
    let key = canonical(chosen);
    (!key.is_empty()).then_some(key)
}

/// Builds the knowledge graph from deduplicated records.
///
/// Records are processed in id order so node numbering and display labels do
/// not depend on input order. Citations resolve only to papers inside the
/// corpus; other reference ids are kept on the paper as
/// `external_references`.
pub fn build_graph(records: &[PaperRecord]) -> Result<KnowledgeGraph> {
    let mut order: Vec<&PaperRecord> = records.iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));
    for pair in order.windows(2) {
        if pair[0].id == pair[1].id {
            return Err(Error::DuplicateId(pair[0].id.clone()));
        }
    }
    let corpus: BTreeMap<&str, i32> = order.iter().map(|r| (r.id.as_str(), r.year)).collect();

    let mut g = KnowledgeGraph::default();
    for record in &order {
        let attrs = paper_attrs(record, &corpus);
        g.push_node(Node {
            node_ref: NodeRef::paper(record.id.clone()),
            label: record.title.trim().to_string(),
            year: record.year,
            paper: Some(Box::new(attrs)),
        });
    }

    let mut edges: BTreeMap<(EdgeType, NodeId, NodeId), i32> = BTreeMap::new();
    for record in &order {
        let paper = g.find_paper(&record.id).expect("paper interned above");
        let year = record.year;
        for author in &record.authors {
            let key = canonical(&author.name);
            if key.is_empty() {
                continue;
            }
            let a = g.intern(NodeType::Author, key, &author.name, year);
            edges.insert((EdgeType::AuthorOf, a, paper), year);
            for address in &author.affiliations {
                if let Some(inst) = institution_key(address) {
                    let label = address.split(',').next().unwrap_or(address);
                    g.intern(NodeType::Institution, inst, label, year);
                }
            }
        }
        let venue = canonical(&record.venue);
        if !venue.is_empty() {
            let v = g.intern(NodeType::Venue, venue, &record.venue, year);
            edges.insert((EdgeType::PublishedAt, paper, v), year);
        }
        for kw in record.extracted_keywords.iter().chain(&record.author_keywords) {
            let key = canonical(kw);
            if key.is_empty() {
                continue;
            }
            let k = g.intern(NodeType::Keyword, key, kw, year);
            edges.insert((EdgeType::MentionsKeyword, paper, k), year);
        }
        for reference in &record.references {
            let reference = reference.trim();
            if reference == record.id {
                continue;
            }
            if let Some(&ref_year) = corpus.get(reference) {
                let target = g.find_paper(reference).expect("corpus paper");
                // an in-press citation to a later paper appears with the later paper
                edges.insert((EdgeType::Cites, paper, target), year.max(ref_year));
            }
        }
    }
    g.edges = edges
        .into_iter()
        .map(|((edge_type, src, dst), year)| Edge { src, dst, edge_type, weight: 1.0, year })
        .collect();
    g.derive_author_edges();
    g.sort_edges();
    Ok(g)
}

fn paper_attrs(record: &PaperRecord, corpus: &BTreeMap<&str, i32>) -> PaperAttrs {
    let text_tokens = tokens(&alloc::format!("{} {}", record.title, record.abstract_text));
    let mut keywords = BTreeSet::new();
    let mut text_keywords = BTreeSet::new();
    for kw in &record.extracted_keywords {
        let key = canonical(kw);
        if !key.is_empty() {
            keywords.insert(key.clone());
            text_keywords.insert(key);
        }
    }
    for kw in &record.author_keywords {
        let key = canonical(kw);
        if key.is_empty() {
            continue;
        }
        if contains_phrase(&text_tokens, &tokens(&key)) {
            text_keywords.insert(key.clone());
        }
        keywords.insert(key);
    }

    let mut countries = BTreeSet::new();
    let mut authors = Vec::new();
    let mut seen = BTreeSet::new();
    for author in &record.authors {
        let key = canonical(&author.name);
        if key.is_empty() || !seen.insert(key.clone()) {
            continue;
        }
        let mut cs: Vec<String> = infer_countries(&author.affiliations)
            .into_iter()
            .filter(|c| !c.is_unknown())
            .map(|c| c.as_str().to_string())
            .collect();
        cs.sort();
        cs.dedup();
        countries.extend(cs.iter().cloned());
        let institutions = author.affiliations.iter().filter_map(|a| institution_key(a)).collect();
        authors.push(PaperAuthor { key, countries: cs, institutions });
    }

    let mut external: Vec<String> = record
        .references
        .iter()
        .map(|r| r.trim())
        .filter(|r| *r != record.id && !corpus.contains_key(r))
        .map(ToString::to_string)
        .collect();
    external.sort();
    external.dedup();

    PaperAttrs {
        title: record.title.clone(),
        abstract_text: record.abstract_text.clone(),
        venue: record.venue.trim().to_string(),
        pub_type: record.pub_type,
        subject_categories: record.subject_categories.clone(),
        publisher: record.publisher.clone(),
        citation_count: record.citation_count,
        page_count: record.page_count,
        external_references: external,
        authors,
        countries: countries.into_iter().collect(),
        intents: record
            .citation_statements
            .iter()
            .flatten()
            .map(|s| s.intent)
            .collect(),
        keywords: keywords.into_iter().collect(),
        text_keywords: text_keywords.into_iter().collect(),
        embedding: record.embedding.clone(),
    }
}
