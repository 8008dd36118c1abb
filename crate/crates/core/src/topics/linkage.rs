//! Theme-to-theme linkage by keyword co-mention, with an ε share threshold.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::text::{contains_phrase, tokens};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LinkageMatrix {
    pub themes: Vec<String>,
    /// Papers mentioning both themes, before thresholding.
    pub raw: Vec<Vec<f64>>,
    /// `raw` with sub-threshold entries zeroed; symmetric, zero diagonal.
    pub weights: Vec<Vec<f64>>,
    pub epsilon: f64,
    /// Themes left out because their keyword set was empty.
    pub dropped: Vec<String>,
}

impl LinkageMatrix {
    /// Row-normalized thresholded weights (rows of zeros stay zero).
    pub fn shares(&self) -> Vec<Vec<f64>> {
        row_normalize(&self.weights)
    }
}

fn row_normalize(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    m.iter()
        .map(|row| {
            let total: f64 = row.iter().sum();
            row.iter().map(|&w| if total > 0.0 { w / total } else { 0.0 }).collect()
        })
        .collect()
}

/// Counts, for every pair of themes, the papers whose text matches at least
/// one keyword of each. An entry is zeroed when it falls below `epsilon` of
/// both its row total and its column total.
pub fn topic_linkage<S: AsRef<str>>(
    themes: &BTreeMap<String, Vec<String>>,
    papers: &[Vec<S>],
    epsilon: f64,
) -> Result<LinkageMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter("epsilon must lie in [0, 1]"));
    }
    let mut names = Vec::new();
    let mut keyword_tokens: Vec<Vec<Vec<String>>> = Vec::new();
    let mut dropped = Vec::new();
    for (name, keywords) in themes {
        let toks: Vec<Vec<String>> =
            keywords.iter().map(|k| tokens(k)).filter(|t| !t.is_empty()).collect();
        if toks.is_empty() {
            dropped.push(name.clone());
        } else {
            names.push(name.clone());
            keyword_tokens.push(toks);
        }
    }
    let n = names.len();
    let mut raw = alloc::vec![alloc::vec![0.0; n]; n];
    for paper in papers {
        let hit: Vec<usize> = (0..n)
            .filter(|&i| keyword_tokens[i].iter().any(|k| contains_phrase(paper, k)))
            .collect();
        for &i in &hit {
            for &j in &hit {
                if i != j {
                    raw[i][j] += 1.0;
                }
            }
        }
    }
    let shares = row_normalize(&raw);
    let mut weights = raw.clone();
    for i in 0..n {
        for j in 0..n {
            if shares[i][j] < epsilon && shares[j][i] < epsilon {
                weights[i][j] = 0.0;
            }
        }
    }
    Ok(LinkageMatrix { themes: names, raw, weights, epsilon, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn themes(pairs: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
        pairs.iter()
            .map(|(n, ks)| (String::from(*n), ks.iter().map(|k| String::from(*k)).collect()))
            .collect()
    }

    #[test]
    fn never_co_mentioned() {
        let t = themes(&[("a", &["alpha"]), ("b", &["beta"])]);
        let papers = vec![tokens("alpha only"), tokens("beta only")];
        let m = topic_linkage(&t, &papers, 0.15).unwrap();
        assert_eq!(m.raw[0][1], 0.0);
    }

    #[test]
    fn complete_uniform_rows() {
        let t = themes(&[("a", &["alpha"]), ("b", &["beta"]), ("c", &["gamma"]), ("d", &["delta"])]);
        let papers = vec![tokens("alpha beta gamma delta"); 3];
        let m = topic_linkage(&t, &papers, 0.15).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.weights[i][j], if i == j { 0.0 } else { 3.0 });
            }
            assert!(m.shares()[i].iter().filter(|&&s| s > 0.0).all(|&s| (s - 1.0 / 3.0).abs() < 1e-15));
        }
    }

    #[test]
    fn empty_theme_dropped() {
        let t = themes(&[("a", &["alpha"]), ("empty", &[])]);
        let m = topic_linkage(&t, &[tokens("alpha")], 0.1).unwrap();
        assert_eq!(m.themes, ["a"]);
        assert_eq!(m.dropped, ["empty"]);
    }

    #[test]
    fn epsilon_range_checked() {
        assert!(topic_linkage::<String>(&BTreeMap::new(), &[], 1.5).is_err());
    }

    #[test]
    fn threshold_needs_both_directions_small() {
        // a co-occurs with b once and with c nine times; b has only the link to a
        let t = themes(&[("a", &["alpha"]), ("b", &["beta"]), ("c", &["gamma"])]);
        let mut papers = vec![tokens("alpha beta")];
        papers.extend(vec![tokens("alpha gamma"); 9]);
        let m = topic_linkage(&t, &papers, 0.15).unwrap();
        // a→b share 0.1 < ε but b→a share 1 ≥ ε: kept
        assert_eq!(m.weights[0][1], 1.0);
        assert_eq!(m.weights[1][0], 1.0);
    }
}
