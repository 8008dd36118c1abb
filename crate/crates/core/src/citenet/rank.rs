use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::kg::{EdgeType, KnowledgeGraph, NodeType};
use crate::math;
use crate::{Error, Result};

/// Papers, authors and venues with their links, indexed densely.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankInput {
    pub papers: Vec<String>,
    pub years: Vec<i32>,
    /// `citers[i]` = papers citing paper `i`.
    pub citers: Vec<Vec<usize>>,
    pub out_degree: Vec<usize>,
    pub authors: Vec<String>,
    pub paper_authors: Vec<Vec<usize>>,
    pub venues: Vec<String>,
    pub paper_venue: Vec<Option<usize>>,
}

impl RankInput {
    /// Papers, authors and venues ordered by key.
    pub fn from_graph(graph: &KnowledgeGraph) -> Self {
        let dense = |t: NodeType| -> (Vec<String>, BTreeMap<usize, usize>) {
            let mut members: Vec<(&str, usize)> =
                graph.nodes_of(t).map(|(id, n)| (n.node_ref.key.as_str(), id.0)).collect();
            members.sort();
            let remap = members.iter().enumerate().map(|(i, &(_, id))| (id, i)).collect();
            (members.into_iter().map(|(k, _)| String::from(k)).collect(), remap)
        };
        let (papers, p_of) = dense(NodeType::Paper);
        let (authors, a_of) = dense(NodeType::Author);
        let (venues, v_of) = dense(NodeType::Venue);
        let n = papers.len();
        let mut input = RankInput {
            years: papers.iter().map(|k| graph.node(graph.find_paper(k).unwrap()).year).collect(),
            papers,
            citers: alloc::vec![Vec::new(); n],
            out_degree: alloc::vec![0; n],
            authors,
            paper_authors: alloc::vec![Vec::new(); n],
            venues,
            paper_venue: alloc::vec![None; n],
        };
        for e in graph.edges() {
            match e.edge_type {
                EdgeType::Cites => {
                    let (src, dst) = (p_of[&e.src.0], p_of[&e.dst.0]);
                    input.citers[dst].push(src);
                    input.out_degree[src] += 1;
                }
                EdgeType::AuthorOf => input.paper_authors[p_of[&e.dst.0]].push(a_of[&e.src.0]),
                EdgeType::PublishedAt => input.paper_venue[p_of[&e.src.0]] = Some(v_of[&e.dst.0]),
                _ => {}
            }
        }
        input
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankScores {
    pub papers: BTreeMap<String, f64>,
    pub authors: BTreeMap<String, f64>,
    pub venues: BTreeMap<String, f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Scores papers by importance within the corpus.
pub trait EssentialRanker {
    fn rank(&self, input: &RankInput) -> Result<RankScores>;
}

/// Mutual reinforcement of papers, authors and venues with time-decayed
/// citation flow.
///
/// `p_i = d·(C_i + A_i + V_i)/3 + (1 − d)/|P|` where `C_i` sums
/// `p_j / out_j · e^(−ρ·(t_now − t_j))` over citers `j`, `A_i` is the mean
/// score of its authors and `V_i` the score of its venue. Author and venue
/// scores are the mean score of their papers. Each vector is rescaled to sum
/// 1 after every sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualReinforcement {
    pub decay: f64,
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for MutualReinforcement {
    fn default() -> Self {
        MutualReinforcement { decay: 0.2, damping: 0.85, tol: 1e-10, max_iter: 1000 }
    }
}

impl EssentialRanker for MutualReinforcement {
    fn rank(&self, input: &RankInput) -> Result<RankScores> {
        if !(self.decay >= 0.0 && self.decay.is_finite()) {
            return Err(Error::InvalidParameter("decay must be non-negative"));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidParameter("damping must lie in [0, 1)"));
        }
        if self.tol.is_nan() || self.tol <= 0.0 || self.max_iter == 0 {
            return Err(Error::InvalidParameter("tol and max_iter must be positive"));
        }
        let n = input.papers.len();
        if n == 0 {
            return Ok(RankScores::default());
        }
        let t_now = input.years.iter().copied().max().unwrap_or(0);
        let decay: Vec<f64> = input
            .years
            .iter()
            .zip(&input.out_degree)
            .map(|(&t, &out)| {
                if out == 0 {
                    0.0
                } else {
                    math::exp(-self.decay * (t_now - t) as f64) / out as f64
                }
            })
            .collect();
        let mut author_papers = alloc::vec![Vec::new(); input.authors.len()];
        let mut venue_papers = alloc::vec![Vec::new(); input.venues.len()];
        for i in 0..n {
            for &a in &input.paper_authors[i] {
                author_papers[a].push(i);
            }
            if let Some(v) = input.paper_venue[i] {
                venue_papers[v].push(i);
            }
        }
        let uniform = |len: usize| alloc::vec![1.0 / len as f64; len];
        let mut p = uniform(n);
        let mut a = uniform(input.authors.len());
        let mut v = uniform(input.venues.len());
        let d = self.damping;
        for iteration in 1..=self.max_iter {
            let mut next_p: Vec<f64> = (0..n)
                .map(|i| {
                    let c: f64 = input.citers[i].iter().map(|&j| p[j] * decay[j]).sum();
                    let auth = &input.paper_authors[i];
                    let av = if auth.is_empty() {
                        0.0
                    } else {
                        auth.iter().map(|&k| a[k]).sum::<f64>() / auth.len() as f64
                    };
                    let vv = input.paper_venue[i].map_or(0.0, |m| v[m]);
                    d * (c + av + vv) / 3.0 + (1.0 - d) / n as f64
                })
                .collect();
            normalize(&mut next_p);
            let mut next_a = mean_of_members(&author_papers, &next_p);
            normalize(&mut next_a);
            let mut next_v = mean_of_members(&venue_papers, &next_p);
            normalize(&mut next_v);
            let residual = max_change(&p, &next_p).max(max_change(&a, &next_a)).max(max_change(&v, &next_v));
            p = next_p;
            a = next_a;
            v = next_v;
            if residual < self.tol {
                let keyed = |keys: &[String], vals: &[f64]| keys.iter().cloned().zip(vals.iter().copied()).collect();
                return Ok(RankScores {
                    papers: keyed(&input.papers, &p),
                    authors: keyed(&input.authors, &a),
                    venues: keyed(&input.venues, &v),
                    iterations: iteration,
                    residual,
                });
            }
            if iteration == self.max_iter {
                return Err(Error::NotConverged { iterations: iteration, residual });
            }
        }
        unreachable!("max_iter is positive")
    }
}

fn mean_of_members(groups: &[Vec<usize>], scores: &[f64]) -> Vec<f64> {
    groups
        .iter()
        .map(|g| if g.is_empty() { 0.0 } else { g.iter().map(|&i| scores[i]).sum::<f64>() / g.len() as f64 })
        .collect()
}

fn normalize(xs: &mut [f64]) {
    let total: f64 = xs.iter().sum();
    if total > 0.0 {
        xs.iter_mut().for_each(|x| *x /= total);
    }
}

fn max_change(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// [`MutualReinforcement`] over the whole knowledge graph.
pub fn rank_essential(
    graph: &KnowledgeGraph,
    decay: f64,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankScores> {
    MutualReinforcement { decay, damping, tol, max_iter }.rank(&RankInput::from_graph(graph))
}
