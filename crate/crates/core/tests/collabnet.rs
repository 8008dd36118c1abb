#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeSet;

use common::random_graph;
use litla_core::collabnet::*;
use litla_core::ProjectedGraph;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: usize = usize::MAX / 4;

fn all_pairs(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Components by repeated label propagation over the distance matrix.
fn component_sets(d: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    let n = d.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !seen[s] {
            let c: BTreeSet<usize> = (0..n).filter(|&t| d[s][t] < INF).collect();
            c.iter().for_each(|&t| seen[t] = true);
            out.push(c);
        }
    }
    out
}

fn dense_pagerank(n: usize, edges: &[(usize, usize, f64)], damping: f64) -> DVector<f64> {
    let mut w = DMatrix::<f64>::zeros(n, n);
    for &(a, b, x) in edges {
        w[(a, b)] += x;
        w[(b, a)] += x;
    }
    let mut p = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let s: f64 = w.column(j).sum();
        for i in 0..n {
            p[(i, j)] = if s > 0.0 { w[(i, j)] / s } else { 1.0 / n as f64 };
        }
    }
    let a = DMatrix::<f64>::identity(n, n) - p * damping;
    let b = DVector::from_element(n, (1.0 - damping) / n as f64);
    let x = a.lu().solve(&b).unwrap();
    let total = x.sum();
    x / total
}

/// Every shortest path between `s` and `t`, as node sequences.
fn shortest_paths(d: &[Vec<usize>], adj: &[Vec<bool>], s: usize, t: usize) -> Vec<Vec<usize>> {
    if d[s][t] >= INF {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path);
            continue;
        }
        for next in 0..d.len() {
            if adj[last][next] && d[s][next] == path.len() && d[next][t] == d[last][t] - 1 {
                let mut p = path.clone();
                p.push(next);
                stack.push(p);
            }
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn brute_cliques(adj: &[Vec<bool>], k: usize) -> u64 {
    fn go(adj: &[Vec<bool>], start: usize, k: usize, chosen: &mut Vec<usize>) -> u64 {
        if chosen.len() == k {
            return 1;
        }
        let mut total = 0;
        for v in start..adj.len() {
            chosen.push(v);
            // check the full subset only once it is complete
            let ok = chosen.len() < k || chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| adj[a][b]));
            if ok {
                total += go(adj, v + 1, k, chosen);
            }
            chosen.pop();
        }
        total
    }
    go(adj, 0, k, &mut Vec::new())
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in edges {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pagerank_matches_linear_solve(seed in any::<u64>(), n in 2usize..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(usize, usize, f64)> = random_graph(&mut rng, n, 0.25)
            .into_iter()
            .map(|(a, b)| (a, b, rng.random_range(0.5..4.0)))
            .collect();
        let g = ProjectedGraph::weighted(n, &edges);
        let got = pagerank(&g, 0.85, 1e-13, 10_000).unwrap();
        let want = dense_pagerank(n, &edges, 0.85);
        for i in 0..n {
            prop_assert!((got[i] - want[i]).abs() < 1e-8, "{} vs {}", got[i], want[i]);
        }
        prop_assert!((got.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let scaled: Vec<(usize, usize, f64)> = edges.iter().map(|&(a, b, w)| (a, b, w * 3.5)).collect();
        let again = pagerank(&ProjectedGraph::weighted(n, &scaled), 0.85, 1e-13, 10_000).unwrap();
        for i in 0..n {
            prop_assert!((got[i] - again[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn structure_matches_brute_force(seed in any::<u64>(), n in 1usize..=30, p in 0.02f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_graph(&mut rng, n, p);
        let g = ProjectedGraph::undirected(n, &edges);
        let d = all_pairs(n, &edges);
        let adj = adjacency(n, &edges);

        // components
        let comps = component_sets(&d);
        let mut sizes: Vec<usize> = comps.iter().map(BTreeSet::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let report = components(&g);
        prop_assert_eq!(&report.sizes, &sizes);
        prop_assert_eq!(report.count, comps.len());

        // diameter of the largest component (smallest member wins ties)
        let largest = comps.iter().filter(|c| c.len() == sizes[0]).min_by_key(|c| *c.iter().next().unwrap()).unwrap();
        let diameter = largest.iter().flat_map(|&a| largest.iter().map(move |&b| (a, b))).map(|(a, b)| d[a][b]).max().unwrap();
        prop_assert_eq!(diameter_lcc(&g), diameter);
        prop_assert_eq!(report.diameter_of_largest, diameter);

        // hop coverage from the highest-degree node of the largest component
        let deg = |v: usize| adj[v].iter().filter(|&&x| x).count();
        let source = largest.iter().copied().max_by(|&a, &b| deg(a).cmp(&deg(b)).then(b.cmp(&a))).unwrap();
        prop_assert_eq!(hop_source(&g), Some(source));
        let ecc = largest.iter().map(|&t| d[source][t]).max().unwrap();
        let expected: Vec<(usize, f64)> = (0..=ecc)
            .map(|k| (k, largest.iter().filter(|&&t| d[source][t] <= k).count() as f64 / largest.len() as f64))
            .collect();
        prop_assert_eq!(hop_coverage(&g), expected);

        // betweenness by enumerating shortest paths
        let bc = betweenness(&g);
        for v in 0..n {
            let mut total = 0.0;
            for s in 0..n {
                for t in s + 1..n {
                    if s == v || t == v {
                        continue;
                    }
                    let paths = shortest_paths(&d, &adj, s, t);
                    if !paths.is_empty() {
                        total += paths.iter().filter(|p| p.contains(&v)).count() as f64 / paths.len() as f64;
                    }
                }
            }
            let pairs = if n > 2 { ((n - 1) * (n - 2)) as f64 / 2.0 } else { 1.0 };
            prop_assert!((bc[v] - total / pairs).abs() < 1e-12, "node {}: {} vs {}", v, bc[v], total / pairs);
        }

        // cliques
        for k in 3..=5 {
            prop_assert_eq!(count_k_cliques(&g, k), brute_cliques(&adj, k), "k = {}", k);
        }
    }

    #[test]
    fn complete_graph_cliques_are_binomial(n in 0usize..=8, k in 0usize..=8) {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let g = ProjectedGraph::undirected(n, &edges);
        prop_assert_eq!(count_k_cliques(&g, k), binomial(n as u64, k as u64));
    }

    #[test]
    fn assortativity_is_one_iff_all_edges_homophilous(seed in any::<u64>(), n in 3usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_graph(&mut rng, n, 0.3);
        let labels: Vec<&str> = (0..n).map(|_| ["a", "b", "c"][rng.random_range(0..3)]).collect();
        let g = ProjectedGraph::undirected(n, &edges);
        let res = assortativity_categorical(&g, &labels, "x", false);
        let homophilous = edges.iter().all(|&(a, b)| labels[a] == labels[b]);
        let total: f64 = res.mixing_matrix.iter().flatten().sum();
        if !edges.is_empty() {
            prop_assert!((total - 1.0).abs() < 1e-12);
        }
        match res.r {
            Some(r) => {
                prop_assert!((-1.0..=1.0).contains(&r));
                prop_assert_eq!(r == 1.0, homophilous);
            }
            None => prop_assert!(edges.is_empty() || res.categories.len() <= 1 || homophilous),
        }
    }
}

#[test]
fn twelve_edge_assortativity_by_hand() {
    let edges = [
        (0, 1), (0, 2), (1, 2), (2, 3), (0, 3), // a–a
        (4, 5), (5, 6), (6, 7), (4, 7), // b–b
        (3, 4), (1, 5), (2, 6), // a–b
    ];
    let labels = ["a", "a", "a", "a", "b", "b", "b", "b"];
    let res = assortativity_categorical(&ProjectedGraph::undirected(8, &edges), &labels, "x", false);
    // e = [[10, 3], [3, 8]] / 24, marginals 13/24 and 11/24
    // r = (18·24 − 13² − 11²) / (24² − 13² − 11²) = 142 / 286
    assert!((res.r.unwrap() - 71.0 / 143.0).abs() < 1e-12);
    assert_eq!(res.edges, 12);
}

#[test]
fn seven_node_weighted_pagerank() {
    let edges = [(0, 1, 2.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 3.0), (3, 4, 1.0), (4, 5, 0.5), (5, 6, 2.0), (6, 3, 1.0)];
    let got = pagerank(&ProjectedGraph::weighted(7, &edges), 0.85, 1e-14, 10_000).unwrap();
    let want = dense_pagerank(7, &edges, 0.85);
    for i in 0..7 {
        assert!((got[i] - want[i]).abs() < 1e-8);
    }
}

#[test]
fn top_five_by_pagerank() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 25;
    let edges: Vec<(usize, usize, f64)> =
        random_graph(&mut rng, n, 0.15).into_iter().map(|(a, b)| (a, b, rng.random_range(1..4) as f64)).collect();
    let g = ProjectedGraph::weighted(n, &edges);
    let sub = top_active_subnetwork(&g, 5, &PageRankConfig::default()).unwrap();
    let pr = dense_pagerank(n, &edges, 0.85);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pr[b].partial_cmp(&pr[a]).unwrap());
    let want: BTreeSet<String> = order[..5].iter().map(|&i| format!("n{i:03}")).collect();
    let got: BTreeSet<String> = sub.graph.keys().iter().cloned().collect();
    assert_eq!(got, want);
    for e in sub.graph.edges() {
        let (a, b) = (g.index_of(sub.graph.key(e.a)).unwrap(), g.index_of(sub.graph.key(e.b)).unwrap());
        assert_eq!(g.edge_weight(a, b), Some(e.weight));
    }
}
