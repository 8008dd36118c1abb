//! Class-based TF-IDF topic labeling.
//!
//! For term `t` in class `c`: `tf(t, c)` is the count of `t` in `c` divided by
//! the token total of `c`, `f(t)` the frequency of `t` over all classes and
//! `A` the average token count per class. The score is
//! `tf(t, c) · ln(1 + A / f(t))`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::math;

/// Term scores of every class.
pub fn ctfidf_scores<K: Ord + Clone, S: AsRef<str>>(
    classes: &BTreeMap<K, Vec<S>>,
) -> BTreeMap<K, BTreeMap<String, f64>> {
    let mut class_counts: BTreeMap<K, BTreeMap<&str, usize>> = BTreeMap::new();
    let mut global: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total_tokens = 0usize;
    for (class, tokens) in classes {
        let counts = class_counts.entry(class.clone()).or_default();
        for t in tokens {
            *counts.entry(t.as_ref()).or_insert(0) += 1;
            *global.entry(t.as_ref()).or_insert(0) += 1;
        }
        total_tokens += tokens.len();
    }
    let avg = if classes.is_empty() { 0.0 } else { total_tokens as f64 / classes.len() as f64 };
    class_counts
        .into_iter()
        .map(|(class, counts)| {
            let class_total: usize = counts.values().sum();
            let scores = counts
                .into_iter()
                .map(|(term, n)| {
                    let tf = n as f64 / class_total as f64;
                    let idf = math::ln(1.0 + avg / global[term] as f64);
                    (String::from(term), tf * idf)
                })
                .collect();
            (class, scores)
        })
        .collect()
}

/// Top `top_n` terms per class, by descending score (ties by term).
/// Empty classes yield empty lists.
pub fn ctfidf<K: Ord + Clone, S: AsRef<str>>(
    classes: &BTreeMap<K, Vec<S>>,
    top_n: usize,
) -> BTreeMap<K, Vec<(String, f64)>> {
    ctfidf_scores(classes)
        .into_iter()
        .map(|(class, scores)| {
            let mut ranked: Vec<(String, f64)> = scores.into_iter().collect();
            ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            ranked.truncate(top_n);
            (class, ranked)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn unique_term_outranks_shared_term() {
        let mut classes = BTreeMap::new();
        classes.insert(0, vec!["shared", "unique"]);
        classes.insert(1, vec!["shared", "other"]);
        classes.insert(2, vec!["shared", "third"]);
        let top = ctfidf(&classes, 10);
        assert_eq!(top[&0][0].0, "unique");
        assert!(top[&0][0].1 > top[&0][1].1);
    }

    #[test]
    fn identical_classes_identical_scores() {
        let mut classes = BTreeMap::new();
        classes.insert("a", vec!["x", "y", "y"]);
        classes.insert("b", vec!["x", "y", "y"]);
        let s = ctfidf_scores(&classes);
        assert_eq!(s["a"], s["b"]);
    }

    #[test]
    fn empty_class_has_no_terms() {
        let mut classes: BTreeMap<i32, Vec<&str>> = BTreeMap::new();
        classes.insert(0, vec![]);
        classes.insert(1, vec!["x"]);
        let top = ctfidf(&classes, 10);
        assert!(top[&0].is_empty());
        assert_eq!(top[&1].len(), 1);
    }

    #[test]
    fn truncated_to_top_n() {
        let mut classes = BTreeMap::new();
        classes.insert(0, (0..20).map(|i| alloc::format!("w{i}")).collect::<Vec<_>>());
        assert_eq!(ctfidf(&classes, 10)[&0].len(), 10);
    }
}
