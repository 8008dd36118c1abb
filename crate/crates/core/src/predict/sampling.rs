use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::features::PairFeatures;
use super::history::GraphHistory;
use crate::{Error, Result};

/// A node pair with its features; `u < v` by key.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSample {
    pub u: String,
    pub v: String,
    pub features: Vec<f64>,
    /// Whether the pair connected in the target year; `None` for unlabeled
    /// candidates.
    pub label: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingConfig {
    /// Negatives drawn per positive.
    pub negative_ratio: f64,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { negative_ratio: 5.0, seed: 0 }
    }
}

/// Pairs of nodes present at `year − 1` that first connect in `year`.
pub fn new_edges(history: &GraphHistory, year: i32) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = history
        .edges()
        .filter(|&(u, v, y)| y == year && history.exists(u, year - 1) && history.exists(v, year - 1))
        .map(|(u, v, _)| canonical(history, u, v))
        .collect();
    out.sort_by(|a, b| pair_cmp(history, *a, *b));
    out
}

/// Labeled samples for predicting the edges of `year` from the snapshot of
/// `year − 1`.
///
/// Positives are all [`new_edges`]; negatives are pairs present at
/// `year − 1` and still unconnected at `year`, drawn uniformly without
/// replacement. Features are computed at `year − 1`. Samples are ordered by
/// pair.
pub fn build_training_set(
    history: &GraphHistory,
    year: i32,
    extractor: &impl PairFeatures,
    config: &SamplingConfig,
) -> Result<Vec<PairSample>> {
    if config.negative_ratio.is_nan() || config.negative_ratio < 0.0 {
        return Err(Error::InvalidParameter("negative_ratio must be non-negative"));
    }
    let positives = new_edges(history, year);
    if positives.is_empty() {
        return Err(Error::DegenerateYear(year));
    }
    let nodes = history.nodes_at(year - 1);
    let m = nodes.len();
    let universe = m * (m - 1) / 2;
    let connected = history
        .edges()
        .filter(|&(u, v, y)| y <= year && history.exists(u, year - 1) && history.exists(v, year - 1))
        .count();
    let available = universe - connected;
    let wanted = (crate::math::round(positives.len() as f64 * config.negative_ratio) as usize).min(available);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (year as i64 as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut negatives: BTreeSet<(usize, usize)> = BTreeSet::new();
    if wanted * 2 > available {
        // dense case: enumerate and take a random subset
        let mut all = Vec::with_capacity(available);
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                if !history.connected_at(a, b, year) {
                    all.push(canonical(history, a, b));
                }
            }
        }
        for i in 0..wanted {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        negatives.extend(all.into_iter().take(wanted));
    } else {
        while negatives.len() < wanted {
            let a = nodes[rng.random_range(0..m)];
            let b = nodes[rng.random_range(0..m)];
            if a != b && !history.connected_at(a, b, year) {
                negatives.insert(canonical(history, a, b));
            }
        }
    }
    let mut pairs: Vec<((usize, usize), bool)> =
        positives.into_iter().map(|p| (p, true)).chain(negatives.into_iter().map(|p| (p, false))).collect();
    pairs.sort_by(|a, b| pair_cmp(history, a.0, b.0));
    Ok(pairs
        .into_iter()
        .map(|((u, v), label)| PairSample {
            u: history.key(u).into(),
            v: history.key(v).into(),
            features: extractor.extract(history, u, v, year - 1),
            label: Some(label),
        })
        .collect())
}

/// `(u, v)` ordered so that `key(u) < key(v)`.
pub fn canonical(history: &GraphHistory, a: usize, b: usize) -> (usize, usize) {
    if history.key(a) <= history.key(b) {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_cmp(history: &GraphHistory, a: (usize, usize), b: (usize, usize)) -> core::cmp::Ordering {
    (history.key(a.0), history.key(a.1)).cmp(&(history.key(b.0), history.key(b.1)))
}
