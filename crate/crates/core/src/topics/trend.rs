//! Topic prevalence over time and emerging-topic ranking.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::math;
use crate::stats::YearSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrendMode {
    /// Papers per topic per year.
    Count,
    /// Topic count over the number of papers carrying at least one topic
    /// that year.
    Share,
    /// Topic count over all papers of that year, labeled or not.
    ShareOfAll,
}

/// Per-topic yearly series over `first..=last`.
///
/// `labels` holds one `(year, topics)` entry per paper; an empty set marks an
/// unlabeled paper. A paper counts once for each distinct topic it carries.
/// Years without any denominator report a share of 0.
pub fn topic_trend<K: Ord + Clone>(
    labels: &[(i32, BTreeSet<K>)],
    first: i32,
    last: i32,
    mode: TrendMode,
) -> BTreeMap<K, YearSeries> {
    let years: Vec<i32> = (first..=last).collect();
    let slot = |y: i32| (y - first) as usize;
    let mut counts: BTreeMap<K, Vec<f64>> = BTreeMap::new();
    let mut labeled = alloc::vec![0.0; years.len()];
    let mut all = alloc::vec![0.0; years.len()];
    for (year, topics) in labels {
        if *year < first || *year > last {
            continue;
        }
        all[slot(*year)] += 1.0;
        if !topics.is_empty() {
            labeled[slot(*year)] += 1.0;
        }
        for t in topics {
            counts.entry(t.clone()).or_insert_with(|| alloc::vec![0.0; years.len()])[slot(*year)] +=
                1.0;
        }
    }
    counts
        .into_iter()
        .map(|(topic, values)| {
            let values = match mode {
                TrendMode::Count => values,
                TrendMode::Share | TrendMode::ShareOfAll => {
                    let denom = if mode == TrendMode::Share { &labeled } else { &all };
                    values
                        .iter()
                        .zip(denom)
                        .map(|(&c, &d)| if d > 0.0 { c / d } else { 0.0 })
                        .collect()
                }
            };
            (topic, YearSeries::new(years.clone(), values))
        })
        .collect()
}

/// Converts a single-label assignment (noise `< 0`) into trend input.
pub fn single_labels(years: &[i32], labels: &[i32]) -> Vec<(i32, BTreeSet<i32>)> {
    years
        .iter()
        .zip(labels)
        .map(|(&y, &l)| {
            let mut set = BTreeSet::new();
            if l >= 0 {
                set.insert(l);
            }
            (y, set)
        })
        .collect()
}

/// Growth of a topic over a window: least-squares slope of its counts
/// divided by its mean count.
#[derive(Debug, Clone, PartialEq)]
pub struct Emerging<K> {
    pub topic: K,
    pub growth_rate: f64,
    pub latest_count: f64,
}

/// Ranks topics by growth over `since_year..=latest year` and keeps the top
/// `k`. Topics with no papers in the window are left out. Ties go to the
/// larger latest-year count, then to the smaller key.
pub fn emerging_topics<K: Ord + Clone>(
    trends: &BTreeMap<K, YearSeries>,
    since_year: i32,
    k: usize,
) -> Vec<Emerging<K>> {
    let mut out: Vec<Emerging<K>> = trends
        .iter()
        .filter_map(|(topic, series)| {
            let window: Vec<(f64, f64)> = series
                .iter()
                .filter(|&(y, _)| y >= since_year)
                .map(|(y, v)| (y as f64, v))
                .collect();
            let (xs, ys): (Vec<f64>, Vec<f64>) = window.iter().copied().unzip();
            let mean = math::mean(&ys);
            if mean <= 0.0 {
                return None;
            }
            let slope = math::fit_line(&xs, &ys).map_or(0.0, |f| f.slope);
            Some(Emerging {
                topic: topic.clone(),
                growth_rate: slope / mean,
                latest_count: *ys.last()?,
            })
        })
        .collect();
    out.sort_by(|a, b| {
        b.growth_rate
            .total_cmp(&a.growth_rate)
            .then(b.latest_count.total_cmp(&a.latest_count))
            .then_with(|| a.topic.cmp(&b.topic))
    });
    out.truncate(k);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(xs: &[&'static str]) -> BTreeSet<&'static str> {
        xs.iter().copied().collect()
    }

    #[test]
    fn single_topic_share_is_one() {
        let labels = vec![(2010, set(&["a"])), (2011, set(&["a"])), (2011, set(&["a"]))];
        let t = topic_trend(&labels, 2010, 2011, TrendMode::Share);
        assert_eq!(t["a"].values, [1.0, 1.0]);
    }

    #[test]
    fn multi_label_counts_each_topic() {
        let labels = vec![(2010, set(&["a", "b"])), (2010, set(&[]))];
        let t = topic_trend(&labels, 2010, 2010, TrendMode::Count);
        assert_eq!((t["a"].values[0], t["b"].values[0]), (1.0, 1.0));
        let s = topic_trend(&labels, 2010, 2010, TrendMode::Share);
        assert_eq!(s["a"].values, [1.0]);
        let all = topic_trend(&labels, 2010, 2010, TrendMode::ShareOfAll);
        assert_eq!(all["a"].values, [0.5]);
    }

    #[test]
    fn out_of_window_papers_ignored() {
        let labels = vec![(2009, set(&["a"])), (2010, set(&["a"]))];
        let t = topic_trend(&labels, 2010, 2011, TrendMode::Count);
        assert_eq!(t["a"].values, [1.0, 0.0]);
    }

    #[test]
    fn exponential_beats_flat() {
        let mut trends = BTreeMap::new();
        trends.insert("flat", YearSeries::new(vec![2018, 2019, 2020, 2021], vec![5.0; 4]));
        trends.insert("exp", YearSeries::new(vec![2018, 2019, 2020, 2021], vec![1.0, 2.0, 4.0, 8.0]));
        let ranked = emerging_topics(&trends, 2018, 2);
        assert_eq!(ranked[0].topic, "exp");
        assert!((ranked[0].growth_rate - 2.3 / 3.75).abs() < 1e-12);
        assert_eq!(ranked[1].growth_rate, 0.0);
    }

    #[test]
    fn flat_topics_ranked_by_latest_count() {
        let mut trends = BTreeMap::new();
        trends.insert("a", YearSeries::new(vec![2020, 2021], vec![2.0, 2.0]));
        trends.insert("b", YearSeries::new(vec![2020, 2021], vec![7.0, 7.0]));
        trends.insert("gone", YearSeries::new(vec![2020, 2021], vec![0.0, 0.0]));
        let ranked = emerging_topics(&trends, 2020, 10);
        let order: Vec<&str> = ranked.iter().map(|e| e.topic).collect();
        assert_eq!(order, ["b", "a"]);
    }
}
