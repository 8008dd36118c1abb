use alloc::vec::Vec;

use super::history::GraphHistory;
use crate::math;

/// Turns a node pair at a given year into a fixed-length feature vector.
pub trait PairFeatures {
    fn names(&self) -> &'static [&'static str];

    /// Features of `(u, v)` on the snapshot of `year`.
    fn extract(&self, history: &GraphHistory, u: usize, v: usize, year: i32) -> Vec<f64>;

    fn dim(&self) -> usize {
        self.names().len()
    }
}

/// Degrees, neighborhood overlap and one-year deltas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TopologicalFeatures;

pub const TOPOLOGICAL_FEATURES: [&str; 10] = [
    "deg_u",
    "deg_v",
    "deg_sum",
    "deg_product",
    "common_neighbors",
    "jaccard",
    "adamic_adar",
    "deg_u_delta",
    "deg_v_delta",
    "common_neighbors_delta",
];

impl PairFeatures for TopologicalFeatures {
    fn names(&self) -> &'static [&'static str] {
        &TOPOLOGICAL_FEATURES
    }

    fn extract(&self, history: &GraphHistory, u: usize, v: usize, year: i32) -> Vec<f64> {
        pair_features(history, u, v, year).to_vec()
    }
}

/// The [`TOPOLOGICAL_FEATURES`] of `(u, v)` at `year`. Deltas compare with
/// `year − 1` and are 0 when the history starts at `year`.
pub fn pair_features(history: &GraphHistory, u: usize, v: usize, year: i32) -> [f64; 10] {
    let du = history.degree_at(u, year);
    let dv = history.degree_at(v, year);
    let nu: Vec<usize> = history.neighbors_at(u, year).collect();
    let nv: Vec<usize> = history.neighbors_at(v, year).collect();
    let common = intersect(&nu, &nv);
    let union = nu.len() + nv.len() - common.len();
    let jaccard = if union == 0 { 0.0 } else { common.len() as f64 / union as f64 };
    let adamic_adar: f64 = common.iter().map(|&w| 1.0 / math::ln(history.degree_at(w, year) as f64)).sum();
    let has_past = history.year_range().is_some_and(|(first, _)| first < year);
    let (ddu, ddv, dcn) = if has_past {
        let past = year - 1;
        let pu: Vec<usize> = history.neighbors_at(u, past).collect();
        let pv: Vec<usize> = history.neighbors_at(v, past).collect();
        (
            du as f64 - pu.len() as f64,
            dv as f64 - pv.len() as f64,
            common.len() as f64 - intersect(&pu, &pv).len() as f64,
        )
    } else {
        (0.0, 0.0, 0.0)
    };
    [
        du as f64,
        dv as f64,
        (du + dv) as f64,
        (du * dv) as f64,
        common.len() as f64,
        jaccard,
        adamic_adar,
        ddu,
        ddv,
        dcn,
    ]
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
