use alloc::vec::Vec;

use super::powerlaw::{fit_power_law_ls, PowerLawFit};
use crate::kg::ProjectedGraph;

/// Papers whose prior in-network citation count falls in `[k_lo, k_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttachmentBin {
    pub k_lo: usize,
    pub k_hi: usize,
    pub mean_k: f64,
    pub mean_gain: f64,
    /// Paper-year observations in the bin.
    pub observations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttachmentCurve {
    /// Observations with no prior citations.
    pub zero: Option<AttachmentBin>,
    /// Base-2 logarithmic bins over `k ≥ 1`, ascending.
    pub bins: Vec<AttachmentBin>,
    /// Power law over the bin means with positive gain; `None` with fewer
    /// than three such bins.
    pub fit: Option<PowerLawFit>,
}

#[derive(Default, Clone, Copy)]
struct Acc {
    k: f64,
    gain: f64,
    n: usize,
}

impl Acc {
    fn bin(self, k_lo: usize, k_hi: usize) -> Option<AttachmentBin> {
        (self.n > 0).then(|| AttachmentBin {
            k_lo,
            k_hi,
            mean_k: self.k / self.n as f64,
            mean_gain: self.gain / self.n as f64,
            observations: self.n,
        })
    }
}

/// Citation gain against prior citation count over consecutive yearly
/// snapshots of a citation graph.
///
/// For every year `t` and every paper existing at `t`, `k` is its in-degree
/// over edges stamped `≤ t` and the gain is the number of edges stamped
/// `t + 1` pointing at it.
pub fn preferential_attachment_curve(graph: &ProjectedGraph) -> AttachmentCurve {
    let mut zero = Acc::default();
    let mut bins: Vec<Acc> = Vec::new();
    if let Some((first, last)) = graph.year_range() {
        let n = graph.node_count();
        // incoming[i] = edge years pointing at i, sorted
        let mut incoming: Vec<Vec<i32>> = alloc::vec![Vec::new(); n];
        for e in graph.edges() {
            incoming[e.b].push(e.year);
        }
        for list in &mut incoming {
            list.sort_unstable();
        }
        for t in first..last {
            for (i, years) in incoming.iter().enumerate() {
                if graph.year(i) > t {
                    continue;
                }
                let k = years.partition_point(|&y| y <= t);
                let gain = years.partition_point(|&y| y <= t + 1) - k;
                let slot = if k == 0 {
                    &mut zero
                } else {
                    let b = (usize::BITS - 1 - k.leading_zeros()) as usize;
                    if bins.len() <= b {
                        bins.resize(b + 1, Acc::default());
                    }
                    &mut bins[b]
                };
                slot.k += k as f64;
                slot.gain += gain as f64;
                slot.n += 1;
            }
        }
    }
    let bins: Vec<AttachmentBin> = bins
        .iter()
        .enumerate()
        .filter_map(|(b, acc)| acc.bin(1 << b, (1 << (b + 1)) - 1))
        .collect();
    let (x, y): (Vec<f64>, Vec<f64>) =
        bins.iter().filter(|b| b.mean_gain > 0.0).map(|b| (b.mean_k, b.mean_gain)).unzip();
    let fit = fit_power_law_ls(&x, &y).ok();
    AttachmentCurve { zero: zero.bin(0, 0), bins, fit }
}
