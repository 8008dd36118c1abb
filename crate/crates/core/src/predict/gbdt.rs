use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::math;
use crate::{Error, Result};

pub const MODEL_VERSION: u32 = 1;
const LEAF_CLIP: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbdtParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub min_leaf: usize,
    /// Row fraction drawn (without replacement) for each tree.
    pub subsample: f64,
    pub seed: u64,
}

impl Default for GbdtParams {
    fn default() -> Self {
        GbdtParams { n_trees: 100, max_depth: 3, learning_rate: 0.1, min_leaf: 5, subsample: 1.0, seed: 0 }
    }
}

/// Regression tree node. Rows with `x[feature] < threshold` go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TreeNode {
    Split { feature: usize, threshold: f64, left: Box<TreeNode>, right: Box<TreeNode> },
    Leaf { value: f64 },
}

impl TreeNode {
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { value } => return *value,
                TreeNode::Split { feature, threshold, left, right } => {
                    node = if x[*feature] < *threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }
}

/// Gradient-boosted trees for binary classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtModel {
    pub version: u32,
    pub n_features: usize,
    /// Log-odds of the training positive rate.
    pub base_score: f64,
    pub learning_rate: f64,
    pub trees: Vec<TreeNode>,
}

impl GbdtModel {
    /// Log-odds before the sigmoid.
    pub fn raw_score(&self, x: &[f64]) -> f64 {
        self.base_score + self.learning_rate * self.trees.iter().map(|t| t.predict(x)).sum::<f64>()
    }

    /// Probability of the positive class, kept inside the open interval
    /// `(0, 1)`.
    pub fn predict_proba(&self, x: &[f64]) -> f64 {
        sigmoid(self.raw_score(x)).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + math::exp(-z))
    } else {
        let e = math::exp(z);
        e / (1.0 + e)
    }
}

/// Mean logistic loss.
pub fn log_loss(labels: &[bool], probabilities: &[f64]) -> f64 {
    let total: f64 = labels
        .iter()
        .zip(probabilities)
        .map(|(&y, &p)| {
            let p = p.clamp(1e-15, 1.0 - 1e-15);
            if y {
                -math::ln(p)
            } else {
                -math::ln(1.0 - p)
            }
        })
        .sum();
    total / labels.len().max(1) as f64
}

/// A fitted model with the training loss before boosting and after every
/// round.
#[derive(Debug, Clone, PartialEq)]
pub struct GbdtTraining {
    pub model: GbdtModel,
    pub loss: Vec<f64>,
}

/// Boosting on logistic loss: every round fits a regression tree to the
/// residuals `y − p` with exact greedy variance-reduction splits; leaves
/// take the Newton step `Σ r / Σ p(1 − p)` clipped to `[−4, 4]`.
pub fn train_gbdt(features: &[Vec<f64>], labels: &[bool], params: &GbdtParams) -> Result<GbdtTraining> {
    if features.len() != labels.len() {
        return Err(Error::InvalidParameter("features and labels differ in length"));
    }
    if params.max_depth == 0 || params.min_leaf == 0 {
        return Err(Error::InvalidParameter("max_depth and min_leaf must be positive"));
    }
    if !(params.learning_rate > 0.0 && params.learning_rate <= 1.0) {
        return Err(Error::InvalidParameter("learning_rate must lie in (0, 1]"));
    }
    if !(params.subsample > 0.0 && params.subsample <= 1.0) {
        return Err(Error::InvalidParameter("subsample must lie in (0, 1]"));
    }
    let positives = labels.iter().filter(|&&y| y).count();
    if positives == 0 || positives == labels.len() {
        return Err(Error::SingleClass);
    }
    let n = labels.len();
    let dim = features[0].len();
    if features.iter().any(|x| x.len() != dim) {
        return Err(Error::InvalidParameter("feature vectors differ in length"));
    }
    let rate = positives as f64 / n as f64;
    let base_score = math::ln(rate / (1.0 - rate));
    let y: Vec<f64> = labels.iter().map(|&l| if l { 1.0 } else { 0.0 }).collect();
    // per-feature row order, ascending by value
    let sorted: Vec<Vec<usize>> = (0..dim)
        .map(|f| {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| features[a][f].total_cmp(&features[b][f]).then(a.cmp(&b)));
            idx
        })
        .collect();
    let mut raw = alloc::vec![base_score; n];
    let mut prob: Vec<f64> = raw.iter().map(|&z| sigmoid(z)).collect();
    let mut loss = alloc::vec![log_loss(labels, &prob)];
    let mut trees = Vec::with_capacity(params.n_trees);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut in_sample = alloc::vec![true; n];
    for _ in 0..params.n_trees {
        if params.subsample < 1.0 {
            let take = (math::round(params.subsample * n as f64) as usize).max(1);
            let mut rows: Vec<usize> = (0..n).collect();
            for i in 0..take {
                let j = rng.random_range(i..n);
                rows.swap(i, j);
            }
            in_sample.iter_mut().for_each(|s| *s = false);
            rows[..take].iter().for_each(|&r| in_sample[r] = true);
        }
        let residual: Vec<f64> = y.iter().zip(&prob).map(|(y, p)| y - p).collect();
        let hessian: Vec<f64> = prob.iter().map(|p| p * (1.0 - p)).collect();
        let node_sorted: Vec<Vec<usize>> =
            sorted.iter().map(|idx| idx.iter().copied().filter(|&r| in_sample[r]).collect()).collect();
        let fitter = TreeFitter { features, residual: &residual, hessian: &hessian, params };
        let tree = fitter.grow(node_sorted, 0);
        for i in 0..n {
            raw[i] += params.learning_rate * tree.predict(&features[i]);
            prob[i] = sigmoid(raw[i]);
        }
        loss.push(log_loss(labels, &prob));
        trees.push(tree);
    }
    let model = GbdtModel {
        version: MODEL_VERSION,
        n_features: dim,
        base_score,
        learning_rate: params.learning_rate,
        trees,
    };
    Ok(GbdtTraining { model, loss })
}

struct TreeFitter<'a> {
    features: &'a [Vec<f64>],
    residual: &'a [f64],
    hessian: &'a [f64],
    params: &'a GbdtParams,
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl TreeFitter<'_> {
    /// `rows[f]` holds the node's rows sorted by feature `f`.
    fn grow(&self, rows: Vec<Vec<usize>>, depth: usize) -> TreeNode {
        let members = rows.first().map(Vec::as_slice).unwrap_or(&[]);
        let count = members.len();
        if depth < self.params.max_depth && count >= 2 * self.params.min_leaf {
            if let Some(split) = self.best_split(&rows) {
                let goes_left = |r: usize| self.features[r][split.feature] < split.threshold;
                let (left, right): (Vec<Vec<usize>>, Vec<Vec<usize>>) = rows
                    .into_iter()
                    .map(|list| list.into_iter().partition(|&r| goes_left(r)))
                    .unzip();
                return TreeNode::Split {
                    feature: split.feature,
                    threshold: split.threshold,
                    left: Box::new(self.grow(left, depth + 1)),
                    right: Box::new(self.grow(right, depth + 1)),
                };
            }
        }
        self.leaf(members)
    }

    fn leaf(&self, rows: &[usize]) -> TreeNode {
        let g: f64 = rows.iter().map(|&r| self.residual[r]).sum();
        let h: f64 = rows.iter().map(|&r| self.hessian[r]).sum();
        let value = if h > 1e-12 { (g / h).clamp(-LEAF_CLIP, LEAF_CLIP) } else { 0.0 };
        TreeNode::Leaf { value }
    }

    fn best_split(&self, rows: &[Vec<usize>]) -> Option<SplitChoice> {
        let n = rows[0].len();
        let total: f64 = rows[0].iter().map(|&r| self.residual[r]).sum();
        let parent = total * total / n as f64;
        let min_leaf = self.params.min_leaf;
        let mut best: Option<SplitChoice> = None;
        for (f, order) in rows.iter().enumerate() {
            let mut left_sum = 0.0;
            for i in 0..n - 1 {
                let r = order[i];
                left_sum += self.residual[r];
                let left_n = i + 1;
                let (x, next) = (self.features[r][f], self.features[order[i + 1]][f]);
                if left_n < min_leaf || n - left_n < min_leaf || x == next {
                    continue;
                }
                let right_sum = total - left_sum;
                let gain = left_sum * left_sum / left_n as f64 + right_sum * right_sum / (n - left_n) as f64 - parent;
                if gain > 1e-12 && best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(SplitChoice { feature: f, threshold: midpoint(x, next), gain });
                }
            }
        }
        best
    }
}

fn midpoint(a: f64, b: f64) -> f64 {
    let m = a + (b - a) / 2.0;
    // guard against rounding onto the lower value
    if m > a {
        m
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn accuracy(model: &GbdtModel, x: &[Vec<f64>], y: &[bool]) -> f64 {
        let hits = x.iter().zip(y).filter(|(x, &y)| (model.predict_proba(x) >= 0.5) == y).count();
        hits as f64 / y.len() as f64
    }

    #[test]
    fn separable_feature() {
        let x: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64]).collect();
        let y: Vec<bool> = (0..40).map(|i| i >= 17).collect();
        let params = GbdtParams { n_trees: 10, min_leaf: 1, ..Default::default() };
        let fit = train_gbdt(&x, &y, &params).unwrap();
        assert_eq!(accuracy(&fit.model, &x, &y), 1.0);
        match &fit.model.trees[0] {
            TreeNode::Split { threshold, .. } => assert_eq!(*threshold, 16.5),
            leaf => panic!("expected a split, got {leaf:?}"),
        }
    }

    #[test]
    fn identical_features_give_base_rate() {
        let x = vec![vec![1.0, 2.0]; 10];
        let y: Vec<bool> = (0..10).map(|i| i < 3).collect();
        let fit = train_gbdt(&x, &y, &GbdtParams::default()).unwrap();
        for t in &fit.model.trees {
            assert!(matches!(t, TreeNode::Leaf { value } if value.abs() < 1e-12));
        }
        assert!((fit.model.predict_proba(&[5.0, -1.0]) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn single_class_rejected() {
        assert_eq!(train_gbdt(&[vec![1.0], vec![2.0]], &[true, true], &GbdtParams::default()), Err(Error::SingleClass));
    }

    #[test]
    fn depth_is_bounded() {
        let x: Vec<Vec<f64>> = (0..64).map(|i| vec![(i % 8) as f64, (i / 8) as f64]).collect();
        let y: Vec<bool> = (0..64).map(|i| (i * 7919) % 3 == 0).collect();
        let params = GbdtParams { max_depth: 2, min_leaf: 1, n_trees: 20, ..Default::default() };
        let fit = train_gbdt(&x, &y, &params).unwrap();
        assert!(fit.model.trees.iter().all(|t| t.depth() <= 2));
    }

    #[test]
    fn subsampling_is_seeded() {
        let x: Vec<Vec<f64>> = (0..50).map(|i| vec![(i * 37 % 50) as f64]).collect();
        let y: Vec<bool> = (0..50).map(|i| i % 3 == 0).collect();
        let params = GbdtParams { subsample: 0.5, seed: 4, ..Default::default() };
        assert_eq!(train_gbdt(&x, &y, &params), train_gbdt(&x, &y, &params));
    }

    #[test]
    fn stable_sigmoid() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert!(sigmoid(-800.0) >= 0.0 && sigmoid(800.0) <= 1.0);
    }
}
