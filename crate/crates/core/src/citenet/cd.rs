use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::kg::{project, EdgeType, KnowledgeGraph, ProjectedGraph, Projection};
use crate::stats::YearSeries;
use crate::{Error, Result};

/// Reference and citer lists of every paper, restricted to citations whose
/// source is not older than its target.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CitationIndex {
    keys: Vec<String>,
    years: Vec<i32>,
    refs: Vec<Vec<usize>>,
    citers: Vec<Vec<usize>>,
    /// Sorted author ids per paper; empty when unknown.
    authors: Vec<Vec<usize>>,
}

impl CitationIndex {
    pub fn from_graph(graph: &KnowledgeGraph) -> Self {
        let citations = project(graph, Projection::Citation);
        let mut index = Self::from_projected(&citations);
        for e in graph.edges_of(EdgeType::AuthorOf) {
            let key = &graph.node(e.dst).node_ref.key;
            if let Some(p) = citations.index_of(key) {
                index.authors[p].push(e.src.0);
            }
        }
        for list in &mut index.authors {
            list.sort_unstable();
            list.dedup();
        }
        index
    }

    pub fn from_projected(citations: &ProjectedGraph) -> Self {
        let n = citations.node_count();
        let mut refs = alloc::vec![Vec::new(); n];
        let mut citers = alloc::vec![Vec::new(); n];
        for e in citations.edges() {
            if citations.year(e.a) >= citations.year(e.b) {
                refs[e.a].push(e.b);
                citers[e.b].push(e.a);
            }
        }
        for list in refs.iter_mut().chain(citers.iter_mut()) {
            list.sort_unstable();
        }
        CitationIndex {
            keys: citations.keys().to_vec(),
            years: citations.years().to_vec(),
            refs,
            citers,
            authors: alloc::vec![Vec::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn year(&self, i: usize) -> i32 {
        self.years[i]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.keys.binary_search_by(|k| k.as_str().cmp(key)).ok()
    }

    pub fn references(&self, i: usize) -> &[usize] {
        &self.refs[i]
    }

    pub fn citers(&self, i: usize) -> &[usize] {
        &self.citers[i]
    }

    fn shares_author(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.authors[a], &self.authors[b]);
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdConfig {
    /// Only citers published at most this many years after the focal paper.
    pub window: Option<i32>,
    /// Skip citers sharing an author with the focal paper.
    pub exclude_self_citations: bool,
}

impl Default for CdConfig {
    fn default() -> Self {
        CdConfig { window: None, exclude_self_citations: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdResult {
    pub paper: String,
    pub year: i32,
    /// `None` when no paper qualifies as a citer.
    pub cd: Option<f64>,
    pub n_t: usize,
    /// Citers of the focal paper.
    pub f_count: usize,
    /// Citers of at least one of its references.
    pub b_count: usize,
}

/// CD index of one paper: the mean of `f_i − 2·f_i·b_i` over later papers
/// citing it (`f_i`) or any of its references (`b_i`).
pub fn cd_index(index: &CitationIndex, focal: &str, config: &CdConfig) -> Result<CdResult> {
    let f = index.index_of(focal).ok_or_else(|| Error::UnknownNode(focal.into()))?;
    Ok(cd_of(index, f, config))
}

fn cd_of(index: &CitationIndex, f: usize, config: &CdConfig) -> CdResult {
    let year = index.years[f];
    let refs = &index.refs[f];
    let mut candidates: Vec<usize> = index.citers[f].clone();
    for &r in refs {
        candidates.extend_from_slice(&index.citers[r]);
    }
    candidates.sort_unstable();
    candidates.dedup();
    let (mut n_t, mut f_count, mut b_count, mut sum) = (0usize, 0usize, 0usize, 0i64);
    for i in candidates {
        let yi = index.years[i];
        if i == f
            || refs.binary_search(&i).is_ok()
            || yi < year
            || config.window.is_some_and(|w| yi - year > w)
            || (config.exclude_self_citations && index.shares_author(i, f))
        {
            continue;
        }
        let refs_i = &index.refs[i];
        let fi = refs_i.binary_search(&f).is_ok();
        let bi = refs_i.iter().any(|r| refs.binary_search(r).is_ok());
        n_t += 1;
        f_count += fi as usize;
        b_count += bi as usize;
        sum += fi as i64 - 2 * (fi && bi) as i64;
    }
    CdResult {
        paper: index.keys[f].clone(),
        year,
        cd: (n_t > 0).then(|| sum as f64 / n_t as f64),
        n_t,
        f_count,
        b_count,
    }
}

/// CD index of every paper, in key order.
pub fn cd_index_all(index: &CitationIndex, config: &CdConfig) -> Vec<CdResult> {
    (0..index.len()).map(|f| cd_of(index, f, config)).collect()
}

/// Mean defined CD per publication year; years with no defined value are
/// omitted.
pub fn cd_index_yearly(results: &[CdResult]) -> YearSeries {
    let mut acc: BTreeMap<i32, (f64, usize)> = BTreeMap::new();
    for r in results {
        if let Some(cd) = r.cd {
            let slot = acc.entry(r.year).or_default();
            slot.0 += cd;
            slot.1 += 1;
        }
    }
    let (years, values) = acc.into_iter().map(|(y, (s, n))| (y, s / n as f64)).unzip();
    YearSeries::new(years, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::ProjEdge;

    /// Papers `p0..` with the given years and `(citing, cited)` edges.
    pub(crate) fn index(years: &[i32], edges: &[(usize, usize)]) -> CitationIndex {
        let nodes = years.iter().enumerate().map(|(i, &y)| (alloc::format!("p{i}"), y)).collect();
        let edges = edges
            .iter()
            .map(|&(a, b)| ProjEdge { a, b, weight: 1.0, year: years[a].max(years[b]) })
            .collect();
        CitationIndex::from_projected(&ProjectedGraph::new(true, nodes, edges))
    }

    fn cd(idx: &CitationIndex, focal: &str) -> CdResult {
        cd_index(idx, focal, &CdConfig::default()).unwrap()
    }

    #[test]
    fn disruptive_extreme() {
        // p0 ← p1 (focal); p2..p4 cite p1 only
        let idx = index(&[2000, 2001, 2002, 2002, 2003], &[(1, 0), (2, 1), (3, 1), (4, 1)]);
        let r = cd(&idx, "p1");
        assert_eq!(r.cd, Some(1.0));
        assert_eq!((r.n_t, r.f_count, r.b_count), (3, 3, 0));
    }

    #[test]
    fn consolidating_extreme() {
        let idx = index(
            &[2000, 2001, 2002, 2002, 2003],
            &[(1, 0), (2, 1), (2, 0), (3, 1), (3, 0), (4, 1), (4, 0)],
        );
        assert_eq!(cd(&idx, "p1").cd, Some(-1.0));
    }

    #[test]
    fn five_paper_hand_graph() {
        // p0 reference, p1 focal, p2 focal-only, p3 focal+ref, p4 ref-only
        let idx = index(&[2000, 2001, 2002, 2002, 2002], &[(1, 0), (2, 1), (3, 1), (3, 0), (4, 0)]);
        let r = cd(&idx, "p1");
        assert_eq!(r.cd, Some(0.0));
        assert_eq!((r.n_t, r.f_count, r.b_count), (3, 2, 2));
    }

    #[test]
    fn no_citers_is_absent() {
        let idx = index(&[2000, 2001], &[(1, 0)]);
        let r = cd(&idx, "p1");
        assert_eq!(r.cd, None);
        assert_eq!(r.n_t, 0);
        assert!(matches!(cd_index(&idx, "zz", &CdConfig::default()), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn window_limits_citers() {
        let idx = index(&[2000, 2001, 2009], &[(1, 0), (2, 0)]);
        let windowed = CdConfig { window: Some(3), ..CdConfig::default() };
        assert_eq!(cd_index(&idx, "p0", &windowed).unwrap().n_t, 1);
        assert_eq!(cd(&idx, "p0").n_t, 2);
    }

    #[test]
    fn yearly_means_skip_undefined() {
        let results = [
            CdResult { paper: "a".into(), year: 2001, cd: Some(1.0), n_t: 1, f_count: 1, b_count: 0 },
            CdResult { paper: "b".into(), year: 2001, cd: Some(0.0), n_t: 1, f_count: 1, b_count: 1 },
            CdResult { paper: "c".into(), year: 2002, cd: None, n_t: 0, f_count: 0, b_count: 0 },
            CdResult { paper: "d".into(), year: 2003, cd: Some(-1.0), n_t: 2, f_count: 2, b_count: 2 },
        ];
        let s = cd_index_yearly(&results);
        assert_eq!(s.years, [2001, 2003]);
        assert_eq!(s.values, [0.5, -1.0]);
    }
}
