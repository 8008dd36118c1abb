#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use litla_core::text::tokens;
use litla_core::topics::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn toy_corpus() -> BTreeMap<u32, Vec<&'static str>> {
    BTreeMap::from([
        (0, "apple apple banana cherry apple date fig".split(' ').collect()),
        (1, "banana banana cherry grape grape kiwi".split(' ').collect()),
        (2, "cherry date date lemon lemon lemon mango".split(' ').collect()),
    ])
}

#[test]
fn ctfidf_hand_computed_three_classes() {
    // tf · ln(1 + A/f) with A = 20/3, evaluated at 30 digits
    let expected: [(u32, &str, f64); 13] = [
        (0, "apple", 0.5014591082786806),
        (0, "banana", 0.16715303609289353),
        (0, "cherry", 0.16715303609289353),
        (0, "date", 0.16715303609289353),
        (0, "fig", 0.2909831324658629),
        (1, "banana", 0.39002375088341823),
        (1, "cherry", 0.19501187544170911),
        (1, "grape", 0.48877902293114234),
        (1, "kiwi", 0.33948032121017335),
        (2, "cherry", 0.16715303609289353),
        (2, "date", 0.33430607218578706),
        (2, "lemon", 0.5014591082786806),
        (2, "mango", 0.2909831324658629),
    ];
    let scores = ctfidf_scores(&toy_corpus());
    assert_eq!(scores.values().map(BTreeMap::len).sum::<usize>(), expected.len());
    for (class, term, value) in expected {
        assert!((scores[&class][term] - value).abs() < 1e-12, "{class}/{term}");
    }
    let top = ctfidf(&toy_corpus(), 2);
    assert_eq!(top[&1].iter().map(|(t, _)| t.as_str()).collect::<Vec<_>>(), ["grape", "banana"]);
}

fn blob(rng: &mut impl Rng, center: [f64; 2], n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let r = rng.random_range(0.0..0.5);
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            vec![center[0] + r * t.cos(), center[1] + r * t.sin()]
        })
        .collect()
}

#[test]
fn dbscan_recovers_planted_blobs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut points = blob(&mut rng, [0.0, 0.0], 30);
    points.extend(blob(&mut rng, [10.0, 0.0], 20));
    let a = cluster_embeddings(&points, 1.0, 3).unwrap();
    assert_eq!(a.topic_count(), 2);
    assert_eq!(a.noise_count(), 0);
    assert_eq!(a.sizes, [30, 20]);
    assert!(a.labels[..30].iter().all(|&l| l == 0) && a.labels[30..].iter().all(|&l| l == 1));
    points.push(vec![5.0, 5.0]);
    let b = cluster_embeddings(&points, 1.0, 3).unwrap();
    assert_eq!(b.labels[50], -1);
    assert_eq!(b.noise_count(), 1);
}

/// Average linkage straight from the definition: mean pairwise distance
/// between the member sets.
fn average_linkage_oracle(points: &[Vec<f64>]) -> Vec<(BTreeSet<usize>, f64)> {
    let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let mut clusters: Vec<BTreeSet<usize>> = (0..points.len()).map(|i| BTreeSet::from([i])).collect();
    let mut out = Vec::new();
    while clusters.len() > 1 {
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let mut total = 0.0;
                for &a in &clusters[i] {
                    for &b in &clusters[j] {
                        total += d(&points[a], &points[b]);
                    }
                }
                let avg = total / (clusters[i].len() * clusters[j].len()) as f64;
                if avg < best.0 {
                    best = (avg, i, j);
                }
            }
        }
        let (h, i, j) = best;
        let merged: BTreeSet<usize> = clusters[i].union(&clusters[j]).copied().collect();
        clusters.remove(j);
        clusters[i] = merged.clone();
        out.push((merged, h));
    }
    out
}

proptest! {
    #[test]
    fn dendrogram_matches_average_linkage(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<Vec<f64>> = (0..n).map(|_| (0..3).map(|_| rng.random_range(-5.0..5.0)).collect()).collect();
        let dendro = hierarchical_topics(&points);
        let oracle = average_linkage_oracle(&points);
        prop_assert_eq!(dendro.merges.len(), oracle.len());
        for (i, (m, (members, h))) in dendro.merges.iter().zip(&oracle).enumerate() {
            let got: BTreeSet<usize> = dendro.members(n + i).into_iter().collect();
            prop_assert_eq!(&got, members);
            prop_assert!((m.height - h).abs() < 1e-9);
            prop_assert_eq!(m.size, members.len());
        }
        for w in dendro.merges.windows(2) {
            prop_assert!(w[0].height <= w[1].height + 1e-12);
        }
    }

    #[test]
    fn clustering_is_order_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = blob(&mut rng, [0.0, 0.0], 12);
        points.extend(blob(&mut rng, [3.0, 3.0], 9));
        points.extend((0..4).map(|_| vec![rng.random_range(-6.0..9.0), rng.random_range(-6.0..9.0)]));
        let mut perm: Vec<usize> = (0..points.len()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let shuffled: Vec<Vec<f64>> = perm.iter().map(|&i| points[i].clone()).collect();
        let a = cluster_embeddings(&points, 0.6, 3).unwrap();
        let b = cluster_embeddings(&shuffled, 0.6, 3).unwrap();
        let sets = |x: &TopicAssignment, map: &dyn Fn(usize) -> usize| -> BTreeSet<BTreeSet<usize>> {
            x.members().into_iter().map(|m| m.into_iter().map(map).collect()).collect()
        };
        prop_assert_eq!(sets(&a, &|i| i), sets(&b, &|i| perm[i]));
        let mut sa = a.sizes.clone();
        sa.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(&a.sizes, &sa);
        prop_assert_eq!(&a.sizes, &b.sizes);
    }

    #[test]
    fn ctfidf_invariant_to_duplicating_classes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vocab = ["a", "b", "c", "d", "e", "f"];
        let classes: BTreeMap<usize, Vec<&str>> = (0..4)
            .map(|c| (c, (0..rng.random_range(1..15)).map(|_| vocab[rng.random_range(0..vocab.len())]).collect()))
            .collect();
        let doubled: BTreeMap<usize, Vec<&str>> =
            classes.iter().map(|(c, t)| (*c, t.iter().chain(t.iter()).copied().collect())).collect();
        let (x, y) = (ctfidf_scores(&classes), ctfidf_scores(&doubled));
        for (c, terms) in &x {
            for (t, s) in terms {
                prop_assert!((s - y[c][t]).abs() < 1e-12);
                prop_assert!(*s >= 0.0);
            }
        }
    }

    #[test]
    fn trend_counts_cover_labeled_papers(seed in any::<u64>(), multi in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels: Vec<(i32, BTreeSet<u8>)> = (0..60)
            .map(|_| {
                let year = rng.random_range(2010..2015);
                let k = if multi { rng.random_range(0..3) } else { rng.random_range(0..2) };
                (year, (0..k).map(|_| rng.random_range(0..4u8)).collect())
            })
            .collect();
        let trends = topic_trend(&labels, 2010, 2014, TrendMode::Count);
        for year in 2010..=2014 {
            let total: f64 = trends.values().map(|s| s.get(year).unwrap()).sum();
            let labeled = labels.iter().filter(|(y, t)| *y == year && !t.is_empty()).count() as f64;
            let incidences = labels.iter().filter(|(y, _)| *y == year).map(|(_, t)| t.len()).sum::<usize>() as f64;
            prop_assert_eq!(total, incidences);
            prop_assert!(total >= labeled);
            if !multi {
                prop_assert_eq!(total, labeled);
            }
        }
        let shares = topic_trend(&labels, 2010, 2014, TrendMode::Share);
        for (topic, series) in &shares {
            for (year, share) in series.iter() {
                let labeled = labels.iter().filter(|(y, t)| *y == year && !t.is_empty()).count() as f64;
                let count = trends[topic].get(year).unwrap();
                prop_assert_eq!(share, if labeled > 0.0 { count / labeled } else { 0.0 });
            }
        }
    }

    #[test]
    fn linkage_matches_pairwise_counting(seed in any::<u64>(), eps in 0.0f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words = ["red", "green", "blue", "cyan", "pink", "gray", "teal", "gold"];
        let themes: BTreeMap<String, Vec<String>> = [("t0", [0, 1]), ("t1", [2, 3]), ("t2", [4, 5]), ("t3", [6, 7])]
            .iter()
            .map(|(n, ks)| (n.to_string(), ks.iter().map(|&k| words[k].to_string()).collect()))
            .collect();
        let papers: Vec<Vec<String>> = (0..40)
            .map(|_| {
                let text: Vec<&str> = (0..4).map(|_| words[rng.random_range(0..words.len())]).collect();
                tokens(&text.join(" "))
            })
            .collect();
        let m = topic_linkage(&themes, &papers, eps).unwrap();
        let mentions = |p: &[String], t: usize| p.iter().any(|w| *w == words[2 * t] || *w == words[2 * t + 1]);
        let mut raw = [[0.0; 4]; 4];
        for p in &papers {
            for i in 0..4 {
                for j in 0..4 {
                    if i != j && mentions(p, i) && mentions(p, j) {
                        raw[i][j] += 1.0;
                    }
                }
            }
        }
        let row: Vec<f64> = raw.iter().map(|r| r.iter().sum()).collect();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(m.raw[i][j], raw[i][j]);
                let small = |a: usize, b: usize| row[a] == 0.0 || raw[a][b] / row[a] < eps;
                let want = if small(i, j) && small(j, i) { 0.0 } else { raw[i][j] };
                prop_assert_eq!(m.weights[i][j], want);
                prop_assert_eq!(m.weights[i][j], m.weights[j][i]);
            }
            prop_assert_eq!(m.weights[i][i], 0.0);
        }
    }
}

#[test]
fn queries_match_naive_evaluation() {
    type Pred = fn(&BTreeSet<&str>, &str) -> bool;
    let cases: [(&str, Pred); 10] = [
        ("alpha", |w, _| w.contains("alpha")),
        ("alpha AND beta", |w, _| w.contains("alpha") && w.contains("beta")),
        ("alpha beta", |w, _| w.contains("alpha") && w.contains("beta")),
        ("alpha OR gamma", |w, _| w.contains("alpha") || w.contains("gamma")),
        ("NOT delta", |w, _| !w.contains("delta")),
        ("alpha AND NOT beta", |w, _| w.contains("alpha") && !w.contains("beta")),
        ("(alpha OR beta) AND gamma", |w, _| (w.contains("alpha") || w.contains("beta")) && w.contains("gamma")),
        ("alpha OR beta AND gamma", |w, _| w.contains("alpha") || (w.contains("beta") && w.contains("gamma"))),
        ("\"alpha beta\"", |_, t| t.contains("alpha beta")),
        ("\"gamma delta\" OR NOT (alpha OR epsilon)", |w, t| {
            t.contains("gamma delta") || !(w.contains("alpha") || w.contains("epsilon"))
        }),
    ];
    let text: String = cases.iter().enumerate().map(|(i, (q, _))| format!("q{i}: {q}\n")).collect();
    let queries = parse_query_file(&text).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let vocab = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];
    let docs: Vec<(String, String)> = (0..50)
        .map(|i| {
            let words: Vec<&str> = (0..rng.random_range(1..7)).map(|_| vocab[rng.random_range(0..vocab.len())]).collect();
            (format!("d{i:02}"), words.join(" "))
        })
        .collect();
    let got = assign_by_query(&queries, docs.iter().map(|(id, t)| (id.as_str(), t.as_str())));
    for (id, text) in &docs {
        let words: BTreeSet<&str> = text.split(' ').collect();
        let padded = format!(" {text} ");
        let want: BTreeSet<String> = cases
            .iter()
            .enumerate()
            .filter(|(_, (_, pred))| pred(&words, &padded))
            .map(|(i, _)| format!("q{i}"))
            .collect();
        assert_eq!(got[id], want, "{text}");
    }
}

#[test]
fn emerging_ranks_follow_hand_slopes() {
    let counts: [(u8, [usize; 4]); 5] =
        [(0, [1, 2, 4, 8]), (1, [5, 5, 5, 5]), (2, [4, 3, 2, 1]), (3, [2, 2, 3, 3]), (4, [0, 1, 1, 2])];
    let mut labels = Vec::new();
    for (topic, per_year) in counts {
        for (y, &c) in per_year.iter().enumerate() {
            labels.extend(std::iter::repeat_n((2018 + y as i32, BTreeSet::from([topic])), c));
        }
    }
    let trends = topic_trend(&labels, 2018, 2021, TrendMode::Count);
    let ranked = emerging_topics(&trends, 2018, 5);
    // slope over x = 0..3 is Σ(x−1.5)(y−ȳ)/5, rate = slope/ȳ
    let rate = |ys: [usize; 4]| {
        let mean = ys.iter().sum::<usize>() as f64 / 4.0;
        let slope = ys.iter().enumerate().map(|(x, &y)| (x as f64 - 1.5) * (y as f64 - mean)).sum::<f64>() / 5.0;
        slope / mean
    };
    let mut want: Vec<(u8, f64)> = counts.iter().map(|&(t, ys)| (t, rate(ys))).collect();
    want.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    assert_eq!(ranked.iter().map(|e| e.topic).collect::<Vec<_>>(), want.iter().map(|w| w.0).collect::<Vec<_>>());
    for (e, (_, r)) in ranked.iter().zip(&want) {
        assert!((e.growth_rate - r).abs() < 1e-12);
    }
}
