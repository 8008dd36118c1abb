//! Descriptive statistics: yearly series, quadratic growth fits and facet
//! distributions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::kg::{EdgeType, KnowledgeGraph};
use crate::math;
use crate::{Error, Result};

/// Values indexed by strictly increasing years.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct YearSeries {
    pub years: Vec<i32>,
    pub values: Vec<f64>,
}

impl YearSeries {
    /// # Panics
    /// When lengths differ or years are not strictly increasing.
    pub fn new(years: Vec<i32>, values: Vec<f64>) -> Self {
        assert_eq!(years.len(), values.len(), "years and values differ in length");
        assert!(years.windows(2).all(|w| w[0] < w[1]), "years must be strictly increasing");
        YearSeries { years, values }
    }

    /// Zero-filled series over `first..=last` from sparse `(year, value)` data.
    pub fn dense(first: i32, last: i32, data: &BTreeMap<i32, f64>) -> Self {
        let years: Vec<i32> = (first..=last).collect();
        let values = years.iter().map(|y| data.get(y).copied().unwrap_or(0.0)).collect();
        YearSeries { years, values }
    }

    pub fn len(&self) -> usize {
        self.years.len()
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        self.years.binary_search(&year).ok().map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.years.iter().copied().zip(self.values.iter().copied())
    }

    /// Running sum.
    pub fn cumulative(&self) -> YearSeries {
        let mut acc = 0.0;
        let values = self
            .values
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect();
        YearSeries { years: self.years.clone(), values }
    }
}

/// Paper counts per year, zero-filled across the corpus range.
pub fn publications_per_year(graph: &KnowledgeGraph) -> YearSeries {
    let Some((first, last)) = graph.year_range() else {
        return YearSeries::default();
    };
    let mut counts = BTreeMap::new();
    for (_, node, _) in graph.papers() {
        *counts.entry(node.year).or_insert(0.0) += 1.0;
    }
    YearSeries::dense(first, last, &counts)
}

/// Distinct authors publishing in each year, and distinct authors seen up to
/// and including each year.
pub fn authors_per_year(graph: &KnowledgeGraph) -> (YearSeries, YearSeries) {
    let Some((first, last)) = graph.year_range() else {
        return (YearSeries::default(), YearSeries::default());
    };
    let mut by_year: BTreeMap<i32, BTreeSet<usize>> = BTreeMap::new();
    for e in graph.edges_of(EdgeType::AuthorOf) {
        by_year.entry(graph.node(e.dst).year).or_default().insert(e.src.0);
    }
    let mut seen = BTreeSet::new();
    let mut per_year = Vec::new();
    let mut cumulative = Vec::new();
    for year in first..=last {
        let authors = by_year.get(&year);
        per_year.push(authors.map_or(0, BTreeSet::len) as f64);
        if let Some(a) = authors {
            seen.extend(a.iter().copied());
        }
        cumulative.push(seen.len() as f64);
    }
    let years: Vec<i32> = (first..=last).collect();
    (YearSeries::new(years.clone(), per_year), YearSeries::new(years, cumulative))
}

/// `y = a·(t − origin)² + b·(t − origin) + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// First year of the fitted series; coefficients are in centered time.
    pub origin: i32,
    pub r_squared: f64,
}

impl QuadFit {
    pub fn eval(&self, year: f64) -> f64 {
        let t = year - self.origin as f64;
        (self.a * t + self.b) * t + self.c
    }
}

/// Least-squares quadratic on years centered at the first year.
pub fn fit_quadratic(series: &YearSeries) -> Result<QuadFit> {
    let n = series.len();
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, got: n });
    }
    let origin = series.years[0];
    let ts: Vec<f64> = series.years.iter().map(|&y| (y - origin) as f64).collect();
    // normal equations over the basis (t², t, 1)
    let mut ata = alloc::vec![alloc::vec![0.0; 3]; 3];
    let mut aty = alloc::vec![0.0; 3];
    for (&t, &y) in ts.iter().zip(&series.values) {
        let row = [t * t, t, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y;
        }
    }
    let coef = math::solve(ata, aty).ok_or(Error::DegenerateVariance)?;
    let (a, b, c) = (coef[0], coef[1], coef[2]);
    let r_squared = math::r_squared(&series.values, |i| (a * ts[i] + b) * ts[i] + c)
        .ok_or(Error::DegenerateVariance)?;
    Ok(QuadFit { a, b, c, origin, r_squared })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Facet {
    Venue,
    PubType,
    SubjectCategory,
    /// One count per labeled citation statement.
    Intent,
    /// One count per distinct (paper, country) pair; papers without any
    /// resolved address count once as `UNKNOWN`.
    Country,
    /// One count per distinct (author, country) pair over all of an author's
    /// addresses; authors without any count once as `UNKNOWN`.
    AuthorCountry,
}

impl Facet {
    pub const ALL: [Facet; 6] = [
        Facet::Venue,
        Facet::PubType,
        Facet::SubjectCategory,
        Facet::Intent,
        Facet::Country,
        Facet::AuthorCountry,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Facet::Venue => "venue",
            Facet::PubType => "pub_type",
            Facet::SubjectCategory => "subject_category",
            Facet::Intent => "intent",
            Facet::Country => "country",
            Facet::AuthorCountry => "author_country",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Share {
    pub label: String,
    pub count: usize,
    /// Fraction of the full, untruncated total.
    pub share: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Distribution {
    /// Descending by count, ties by label.
    pub entries: Vec<Share>,
    /// Total count before truncation.
    pub total: usize,
}

/// Frequency table of one facet, truncated to `top_k` entries when given.
pub fn distribution(graph: &KnowledgeGraph, facet: Facet, top_k: Option<usize>) -> Distribution {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut bump = |label: &str| *counts.entry(label.to_string()).or_insert(0) += 1;
    match facet {
        Facet::Venue => {
            for e in graph.edges_of(EdgeType::PublishedAt) {
                bump(&graph.node(e.dst).label);
            }
        }
        Facet::PubType => {
            for (_, _, p) in graph.papers() {
                bump(p.pub_type.as_str());
            }
        }
        Facet::SubjectCategory => {
            for (_, _, p) in graph.papers() {
                let distinct: BTreeSet<&str> =
                    p.subject_categories.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
                distinct.into_iter().for_each(&mut bump);
            }
        }
        Facet::Intent => {
            for (_, _, p) in graph.papers() {
                p.intents.iter().flatten().for_each(|i| bump(i.as_str()));
            }
        }
        Facet::Country => {
            for (_, _, p) in graph.papers() {
                if p.countries.is_empty() {
                    bump("UNKNOWN");
                }
                p.countries.iter().for_each(|c| bump(c));
            }
        }
        Facet::AuthorCountry => {
            let mut by_author: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
            for (_, _, p) in graph.papers() {
                for a in &p.authors {
                    by_author.entry(&a.key).or_default().extend(a.countries.iter().map(String::as_str));
                }
            }
            for countries in by_author.values() {
                if countries.is_empty() {
                    bump("UNKNOWN");
                }
                countries.iter().for_each(|c| bump(c));
            }
        }
    }
    let total: usize = counts.values().sum();
    let mut entries: Vec<Share> = counts
        .into_iter()
        .map(|(label, count)| Share { label, count, share: count as f64 / total as f64 })
        .collect();
    entries.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.label.cmp(&b.label)));
    if let Some(k) = top_k {
        entries.truncate(k);
    }
    Distribution { entries, total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::build_graph;
    use crate::record::{AuthorEntry, CitationStatement, Intent, PaperRecord, PubType};
    use alloc::vec;

    fn rec(id: &str, year: i32, authors: &[&str]) -> PaperRecord {
        let mut r = PaperRecord::new(id, "t", year);
        r.authors = authors
            .iter()
            .map(|n| AuthorEntry { name: n.to_string(), affiliations: vec![] })
            .collect();
        r
    }

    #[test]
    fn publications_zero_filled() {
        let g = build_graph(&[rec("a", 2010, &[]), rec("b", 2012, &[]), rec("c", 2012, &[])])
            .unwrap();
        let s = publications_per_year(&g);
        assert_eq!(s.years, [2010, 2011, 2012]);
        assert_eq!(s.values, [1.0, 0.0, 2.0]);
        assert!(publications_per_year(&KnowledgeGraph::default()).is_empty());
    }

    #[test]
    fn authors_deduplicated() {
        let g = build_graph(&[rec("a", 2010, &["x"]), rec("b", 2011, &["x"])]).unwrap();
        let (per, cum) = authors_per_year(&g);
        assert_eq!(per.values, [1.0, 1.0]);
        assert_eq!(cum.values, [1.0, 1.0]);
        let g = build_graph(&[rec("a", 2010, &["x"]), rec("b", 2011, &["y", "z"])]).unwrap();
        let (per, cum) = authors_per_year(&g);
        assert_eq!(cum.values, per.cumulative().values);
    }

    #[test]
    fn exact_quadratic() {
        let years: Vec<i32> = (2000..2011).collect();
        let values = years.iter().map(|&y| 2.0 * ((y - 2000) as f64).powi(2) + 3.0).collect();
        let fit = fit_quadratic(&YearSeries::new(years, values)).unwrap();
        assert!((fit.a - 2.0).abs() < 1e-9);
        assert!(fit.b.abs() < 1e-9);
        assert!((fit.c - 3.0).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
        assert!((fit.eval(2005.0) - 53.0).abs() < 1e-9);
    }

    #[test]
    fn quadratic_errors() {
        let s = YearSeries::new(vec![1, 2, 3], vec![1.0, 2.0, 3.0]);
        assert_eq!(fit_quadratic(&s), Err(Error::TooFewPoints { needed: 4, got: 3 }));
        let s = YearSeries::new(vec![1, 2, 3, 4, 5], vec![7.0; 5]);
        assert_eq!(fit_quadratic(&s), Err(Error::DegenerateVariance));
    }

    #[test]
    fn pub_type_shares() {
        let mut rs: Vec<PaperRecord> = (0..4).map(|i| rec(&alloc::format!("p{i}"), 2010, &[])).collect();
        for r in &mut rs[..3] {
            r.pub_type = PubType::Journal;
        }
        rs[3].pub_type = PubType::Conference;
        let d = distribution(&build_graph(&rs).unwrap(), Facet::PubType, None);
        assert_eq!(d.entries[0].label, "journal");
        assert_eq!(d.entries[0].share, 0.75);
        assert_eq!(d.entries[1].share, 0.25);
    }

    #[test]
    fn intent_shares() {
        let mut r = rec("a", 2010, &[]);
        let st = |i| CitationStatement { text: "x".into(), intent: i };
        r.citation_statements = Some(vec![
            st(Some(Intent::Method)),
            st(Some(Intent::Background)),
            st(Some(Intent::Method)),
            st(Some(Intent::Extension)),
            st(None),
        ]);
        let d = distribution(&build_graph(&[r]).unwrap(), Facet::Intent, None);
        assert_eq!(d.total, 4);
        assert_eq!((d.entries[0].label.as_str(), d.entries[0].share), ("method", 0.5));
    }

    #[test]
    fn truncation_keeps_full_total() {
        let mut r = rec("a", 2010, &[]);
        r.subject_categories = vec!["CS".into(), "OR".into(), "EE".into(), "CS".into()];
        let d = distribution(&build_graph(&[r]).unwrap(), Facet::SubjectCategory, Some(1));
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.total, 3);
        assert!((d.entries[0].share - 1.0 / 3.0).abs() < 1e-15);
    }
}
