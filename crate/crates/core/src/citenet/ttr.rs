use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::kg::KnowledgeGraph;
use crate::stats::YearSeries;
use crate::text;

/// Title and abstract of every paper, grouped by publication year.
pub fn texts_by_year(graph: &KnowledgeGraph) -> BTreeMap<i32, Vec<String>> {
    let mut out: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    for (_, node, attrs) in graph.papers() {
        out.entry(node.year).or_default().push(alloc::format!("{} {}", attrs.title, attrs.abstract_text));
    }
    out
}

/// Distinct tokens over total tokens of each year's concatenated texts.
/// Years without tokens are omitted.
pub fn type_token_ratio<S: AsRef<str>>(texts: &BTreeMap<i32, Vec<S>>) -> YearSeries {
    let mut years = Vec::new();
    let mut values = Vec::new();
    for (&year, docs) in texts {
        let mut distinct = BTreeSet::new();
        let mut total = 0usize;
        for doc in docs {
            for t in text::tokens(doc.as_ref()) {
                total += 1;
                distinct.insert(t);
            }
        }
        if total > 0 {
            years.push(year);
            values.push(distinct.len() as f64 / total as f64);
        }
    }
    YearSeries::new(years, values)
}
