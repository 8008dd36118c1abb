//! GraphML, DOT, CSV and JSON report writers.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use litla_core::citenet::BackboneGraph;
use litla_core::collabnet::ActiveSubnetwork;
use litla_core::KnowledgeGraph;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttrType {
    String,
    Int,
    Double,
}

impl AttrType {
    fn as_str(self) -> &'static str {
        match self {
            AttrType::String => "string",
            AttrType::Int => "int",
            AttrType::Double => "double",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttrValue {
    Str(String),
    Int(i64),
    Double(f64),
}

impl AttrValue {
    fn render(&self) -> String {
        match self {
            AttrValue::Str(s) => xml_escape(s),
            AttrValue::Int(i) => i.to_string(),
            AttrValue::Double(x) => x.to_string(),
        }
    }
}

/// A graph with typed node and edge attributes, written as GraphML.
#[derive(Debug, Clone, PartialEq)]
pub struct Graphml {
    pub directed: bool,
    pub node_attrs: Vec<(&'static str, AttrType)>,
    pub edge_attrs: Vec<(&'static str, AttrType)>,
    pub nodes: Vec<(String, Vec<AttrValue>)>,
    pub edges: Vec<(String, String, Vec<AttrValue>)>,
}

impl Graphml {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
        for (i, (name, ty)) in self.node_attrs.iter().enumerate() {
            let _ = writeln!(
                out,
                "  <key id=\"n{i}\" for=\"node\" attr.name=\"{name}\" attr.type=\"{}\"/>",
                ty.as_str()
            );
        }
        for (i, (name, ty)) in self.edge_attrs.iter().enumerate() {
            let _ = writeln!(
                out,
                "  <key id=\"e{i}\" for=\"edge\" attr.name=\"{name}\" attr.type=\"{}\"/>",
                ty.as_str()
            );
        }
        let kind = if self.directed { "directed" } else { "undirected" };
        let _ = writeln!(out, "  <graph id=\"G\" edgedefault=\"{kind}\">");
        for (id, values) in &self.nodes {
            let _ = writeln!(out, "    <node id=\"{}\">", xml_escape(id));
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "      <data key=\"n{i}\">{}</data>", v.render());
            }
            out.push_str("    </node>\n");
        }
        for (src, dst, values) in &self.edges {
            let _ = writeln!(out, "    <edge source=\"{}\" target=\"{}\">", xml_escape(src), xml_escape(dst));
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "      <data key=\"e{i}\">{}</data>", v.render());
            }
            out.push_str("    </edge>\n");
        }
        out.push_str("  </graph>\n</graphml>\n");
        out
    }
}

pub fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Node ids are `type:key`.
pub fn knowledge_graph_graphml(graph: &KnowledgeGraph) -> Graphml {
    let nodes = graph
        .nodes()
        .iter()
        .map(|n| {
            (
                n.node_ref.to_string(),
                vec![
                    AttrValue::Str(n.node_ref.node_type.as_str().into()),
                    AttrValue::Str(n.label.clone()),
                    AttrValue::Int(n.year.into()),
                ],
            )
        })
        .collect();
    let edges = graph
        .edges()
        .iter()
        .map(|e| {
            (
                graph.node(e.src).node_ref.to_string(),
                graph.node(e.dst).node_ref.to_string(),
                vec![
                    AttrValue::Str(e.edge_type.as_str().into()),
                    AttrValue::Double(e.weight),
                    AttrValue::Int(e.year.into()),
                ],
            )
        })
        .collect();
    Graphml {
        directed: true,
        node_attrs: vec![("type", AttrType::String), ("label", AttrType::String), ("year", AttrType::Int)],
        edge_attrs: vec![("type", AttrType::String), ("weight", AttrType::Double), ("year", AttrType::Int)],
        nodes,
        edges,
    }
}

pub fn backbone_graphml(backbone: &BackboneGraph) -> Graphml {
    Graphml {
        directed: true,
        node_attrs: vec![("score", AttrType::Double), ("year", AttrType::Int), ("citations", AttrType::Int)],
        edge_attrs: vec![
            ("weight", AttrType::Double),
            ("cocitations", AttrType::Int),
            ("jaccard", AttrType::Double),
        ],
        nodes: backbone
            .nodes
            .iter()
            .map(|n| {
                (
                    n.id.clone(),
                    vec![AttrValue::Double(n.score), AttrValue::Int(n.year.into()), AttrValue::Int(n.citations as i64)],
                )
            })
            .collect(),
        edges: backbone
            .edges
            .iter()
            .map(|e| {
                (
                    e.src.clone(),
                    e.dst.clone(),
                    vec![
                        AttrValue::Double(e.weight),
                        AttrValue::Int(e.cocitations as i64),
                        AttrValue::Double(e.jaccard),
                    ],
                )
            })
            .collect(),
    }
}

pub fn active_subnetwork_graphml(sub: &ActiveSubnetwork) -> Graphml {
    let g = &sub.graph;
    Graphml {
        directed: false,
        node_attrs: vec![("pagerank", AttrType::Double), ("entry_year", AttrType::Int)],
        edge_attrs: vec![("weight", AttrType::Double)],
        nodes: (0..g.node_count())
            .map(|i| (g.key(i).to_string(), vec![AttrValue::Double(sub.pagerank[i]), AttrValue::Int(g.year(i).into())]))
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| (g.key(e.a).to_string(), g.key(e.b).to_string(), vec![AttrValue::Double(e.weight)]))
            .collect(),
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the knowledge graph with one shape per node type.
pub fn knowledge_graph_dot(graph: &KnowledgeGraph) -> String {
    let mut out = String::from("digraph litla {\n");
    for n in graph.nodes() {
        let shape = match n.node_ref.node_type {
            litla_core::NodeType::Paper => "box",
            litla_core::NodeType::Author => "ellipse",
            litla_core::NodeType::Venue => "hexagon",
            litla_core::NodeType::Keyword => "note",
            litla_core::NodeType::Institution => "house",
        };
        let _ = writeln!(
            out,
            "  {} [label={}, shape={shape}, year={}];",
            dot_quote(&n.node_ref.to_string()),
            dot_quote(&n.label),
            n.year
        );
    }
    for e in graph.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [type={}, weight={}, year={}];",
            dot_quote(&graph.node(e.src).node_ref.to_string()),
            dot_quote(&graph.node(e.dst).node_ref.to_string()),
            e.edge_type.as_str(),
            e.weight,
            e.year
        );
    }
    out.push_str("}\n");
    out
}

/// Writes a CSV file from a header and rows.
pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> io::Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// Pretty JSON with a trailing newline.
pub fn write_json(path: &Path, value: &impl Serialize) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)
}

pub fn write_text(path: &Path, text: &str) -> io::Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())
}
