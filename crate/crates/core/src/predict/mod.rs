//! Link prediction on a temporal keyword co-occurrence network: pair
//! features over yearly snapshots, seeded negative sampling, gradient-boosted
//! trees and AUC evaluation.

mod features;
mod gbdt;
mod history;
mod sampling;

use alloc::string::String;
use alloc::vec::Vec;

pub use features::{pair_features, PairFeatures, TopologicalFeatures, TOPOLOGICAL_FEATURES};
pub use gbdt::{log_loss, sigmoid, train_gbdt, GbdtModel, GbdtParams, GbdtTraining, TreeNode, MODEL_VERSION};
pub use history::GraphHistory;
pub use sampling::{build_training_set, canonical, new_edges, PairSample, SamplingConfig};

use crate::{Error, Result};

/// [`train_gbdt`] on labeled pair samples.
pub fn train_on_samples(samples: &[PairSample], params: &GbdtParams) -> Result<GbdtTraining> {
    let mut x = Vec::with_capacity(samples.len());
    let mut y = Vec::with_capacity(samples.len());
    for s in samples {
        let label = s.label.ok_or(Error::InvalidParameter("training samples must be labeled"))?;
        x.push(s.features.clone());
        y.push(label);
    }
    train_gbdt(&x, &y, params)
}

/// Unconnected pairs of nodes present at `year`, canonical and sorted.
/// With `two_hop_only`, only pairs sharing a neighbor.
pub fn candidate_pairs(history: &GraphHistory, year: i32, two_hop_only: bool) -> Vec<(usize, usize)> {
    let nodes = history.nodes_at(year);
    let mut out = Vec::new();
    if two_hop_only {
        let mut seen = alloc::collections::BTreeSet::new();
        for &w in &nodes {
            let nb: Vec<usize> = history.neighbors_at(w, year).collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !history.connected_at(a, b, year) {
                        seen.insert(canonical(history, a, b));
                    }
                }
            }
        }
        out.extend(seen);
    } else {
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                if !history.connected_at(a, b, year) {
                    out.push(canonical(history, a, b));
                }
            }
        }
    }
    out.sort_by(|x, y| (history.key(x.0), history.key(x.1)).cmp(&(history.key(y.0), history.key(y.1))));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkPrediction {
    pub u: String,
    pub v: String,
    pub probability: f64,
    /// 1-based.
    pub rank: usize,
}

/// Scores unconnected candidate pairs on the snapshot of `year` and returns
/// the `top_n` most likely, by descending model score then pair.
pub fn predict_links(
    model: &GbdtModel,
    history: &GraphHistory,
    year: i32,
    candidates: &[(usize, usize)],
    top_n: usize,
    extractor: &impl PairFeatures,
) -> Result<Vec<LinkPrediction>> {
    if extractor.dim() != model.n_features {
        return Err(Error::InvalidParameter("feature extractor does not match the model"));
    }
    let mut scored = Vec::with_capacity(candidates.len());
    for &(a, b) in candidates {
        if a == b || history.connected_at(a, b, year) {
            return Err(Error::InvalidParameter("candidate pairs must be distinct and unconnected"));
        }
        if !history.exists(a, year) || !history.exists(b, year) {
            return Err(Error::UnknownNode(alloc::format!("{}–{}", history.key(a), history.key(b))));
        }
        let (u, v) = canonical(history, a, b);
        let x = extractor.extract(history, u, v, year);
        scored.push((model.raw_score(&x), model.predict_proba(&x), u, v));
    }
    scored.sort_by(|a, b| {
        b.0.total_cmp(&a.0).then_with(|| (history.key(a.2), history.key(a.3)).cmp(&(history.key(b.2), history.key(b.3))))
    });
    Ok(scored
        .into_iter()
        .take(top_n)
        .enumerate()
        .map(|(i, (_, probability, u, v))| LinkPrediction {
            u: history.key(u).into(),
            v: history.key(v).into(),
            probability,
            rank: i + 1,
        })
        .collect())
}

/// Area under the ROC curve as the Mann–Whitney statistic, ties counted
/// half.
pub fn evaluate_auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidParameter("scores and labels differ in length"));
    }
    let positives = labels.iter().filter(|&&y| y).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their mean
        let mean_rank = (i + j + 2) as f64 / 2.0;
        rank_sum += mean_rank * order[i..=j].iter().filter(|&&k| labels[k]).count() as f64;
        i = j + 1;
    }
    let p = positives as f64;
    Ok((rank_sum - p * (p + 1.0) / 2.0) / (p * negatives as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::ProjectedGraph;
    use alloc::vec;

    #[test]
    fn auc_extremes() {
        assert_eq!(evaluate_auc(&[0.1, 0.2, 0.8, 0.9], &[false, false, true, true]), Ok(1.0));
        assert_eq!(evaluate_auc(&[0.3; 4], &[false, true, false, true]), Ok(0.5));
        assert_eq!(evaluate_auc(&[0.9, 0.1], &[false, true]), Ok(0.0));
        assert_eq!(evaluate_auc(&[0.1], &[true]), Err(Error::SingleClass));
    }

    #[test]
    fn candidates_and_predictions() {
        let h = GraphHistory::new(&ProjectedGraph::undirected(4, &[(0, 1), (1, 2), (2, 3)]));
        assert_eq!(candidate_pairs(&h, 0, false), [(0, 2), (0, 3), (1, 3)]);
        assert_eq!(candidate_pairs(&h, 0, true), [(0, 2), (1, 3)]);
        let model = GbdtModel {
            version: MODEL_VERSION,
            n_features: 10,
            base_score: 0.0,
            learning_rate: 1.0,
            trees: vec![TreeNode::Split {
                feature: 4,
                threshold: 0.5,
                left: alloc::boxed::Box::new(TreeNode::Leaf { value: -1.0 }),
                right: alloc::boxed::Box::new(TreeNode::Leaf { value: 1.0 }),
            }],
        };
        let ranked = predict_links(&model, &h, 0, &[(3, 0), (1, 3), (0, 2)], 2, &TopologicalFeatures).unwrap();
        assert_eq!(ranked.len(), 2);
        assert_eq!((ranked[0].u.as_str(), ranked[0].v.as_str(), ranked[0].rank), ("n000", "n002", 1));
        assert_eq!((ranked[1].u.as_str(), ranked[1].v.as_str()), ("n001", "n003"));
        assert!(predict_links(&model, &h, 0, &[], 5, &TopologicalFeatures).unwrap().is_empty());
        assert!(predict_links(&model, &h, 0, &[(0, 1)], 5, &TopologicalFeatures).is_err());
    }
}
