#![allow(dead_code)]

use litla_core::record::AuthorEntry;
use litla_core::PaperRecord;
use rand::Rng;

pub fn record(id: &str, year: i32, authors: &[&str], refs: &[&str]) -> PaperRecord {
    let mut r = PaperRecord::new(id, format!("Paper {id}"), year);
    r.authors = authors.iter().map(|a| AuthorEntry { name: a.to_string(), affiliations: vec![] }).collect();
    r.references = refs.iter().map(|s| s.to_string()).collect();
    r
}

/// Random DAG where node `i` may cite any `j < i`. Years are non-decreasing
/// in the index.
pub fn random_dag(rng: &mut impl Rng, n: usize, p: f64) -> (Vec<i32>, Vec<(usize, usize)>) {
    let mut years = Vec::with_capacity(n);
    let mut year = 2000;
    for _ in 0..n {
        if rng.random_bool(0.5) {
            year += 1;
        }
        years.push(year);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    (years, edges)
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in edges {
        m[a][b] = true;
    }
    m
}

/// Reflexive-free transitive closure by Floyd–Warshall.
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = adjacency(n, edges);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}
