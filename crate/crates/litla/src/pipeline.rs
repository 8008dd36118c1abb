//! Stage runner: ingestion, analyses and report files.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context as _, Result};
use litla_core::citenet::{self, CdConfig, CitationIndex, MutualReinforcement};
use litla_core::collabnet::{self, PageRankConfig};
use litla_core::kg::{apply_exclusions, build_graph, project, EdgeType, ExclusionOutcome, Projection};
use litla_core::predict::{self, GraphHistory, PairFeatures, SamplingConfig, TopologicalFeatures};
use litla_core::stats::{self, Facet};
use litla_core::topics::{self, DendroNode, Dbscan, PaperTopics};
use litla_core::{KnowledgeGraph, NodeType};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::export::{self, write_csv, write_json, write_text};
use crate::records::{parse_records, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Ingest,
    Stats,
    Topics,
    Citenet,
    Collabnet,
    Predict,
}

impl Stage {
    /// Dependency order.
    pub const ALL: [Stage; 6] =
        [Stage::Ingest, Stage::Stats, Stage::Topics, Stage::Citenet, Stage::Collabnet, Stage::Predict];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Stats => "stats",
            Stage::Topics => "topics",
            Stage::Citenet => "citenet",
            Stage::Collabnet => "collabnet",
            Stage::Predict => "predict",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageReport {
    pub stage: &'static str,
    pub status: StageStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub duration_ms: u64,
    /// Relative to the output directory.
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
    pub threads: usize,
    pub stages: Vec<StageReport>,
}

impl Manifest {
    pub fn succeeded(&self) -> bool {
        self.stages.iter().all(|s| s.status == StageStatus::Ok)
    }
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// Parsed, filtered and assembled corpus shared by all stages.
pub struct Corpus {
    pub records_read: usize,
    pub parse_errors: Vec<ParseError>,
    pub exclusions: ExclusionOutcome,
    pub graph: KnowledgeGraph,
}

pub fn load_corpus(config: &RunConfig) -> Result<Corpus> {
    let file = File::open(&config.input).with_context(|| format!("opening {}", config.input.display()))?;
    let parsed = parse_records(BufReader::new(file)).with_context(|| format!("reading {}", config.input.display()))?;
    let records_read = parsed.records.len() + parsed.errors.len();
    let exclusions = apply_exclusions(parsed.records, &config.exclusion.policy());
    let graph = build_graph(&exclusions.kept)?;
    Ok(Corpus { records_read, parse_errors: parsed.errors, exclusions, graph })
}

/// Runs `stages` in dependency order, writes their reports under the output
/// directory and returns the manifest (also written as `manifest.json`).
pub fn run(stages: &[Stage], config: &RunConfig, threads: usize) -> Result<Manifest> {
    fs::create_dir_all(&config.output).with_context(|| format!("creating {}", config.output.display()))?;
    let mut ordered: Vec<Stage> = stages.to_vec();
    ordered.sort();
    ordered.dedup();
    let started = Instant::now();
    let corpus = load_corpus(config);
    let load_ms = started.elapsed().as_millis() as u64;
    let mut ctx = corpus.map(|c| Context { config, corpus: c, topics: None });
    let mut reports = Vec::new();
    for stage in ordered {
        let t0 = Instant::now();
        let result = match &mut ctx {
            Ok(ctx) => ctx.run_stage(stage),
            Err(e) => Err(anyhow!("{e:#}")),
        };
        let duration_ms = t0.elapsed().as_millis() as u64 + if stage == Stage::Ingest { load_ms } else { 0 };
        let report = match result {
            Ok(outputs) => StageReport {
                stage: stage.as_str(),
                status: StageStatus::Ok,
                error: None,
                duration_ms,
                outputs: outputs.iter().map(|p| relative(&config.output, p)).collect(),
            },
            Err(e) => {
                log::error!("stage {} failed: {e:#}", stage.as_str());
                StageReport {
                    stage: stage.as_str(),
                    status: StageStatus::Failed,
                    error: Some(format!("{e:#}")),
                    duration_ms,
                    outputs: Vec::new(),
                }
            }
        };
        reports.push(report);
    }
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config_hash: config.hash(),
        seed: config.seed,
        threads,
        stages: reports,
    };
    write_json(&config.output.join(MANIFEST_FILE), &manifest)?;
    Ok(manifest)
}

fn relative(base: &Path, p: &Path) -> String {
    p.strip_prefix(base).unwrap_or(p).to_string_lossy().replace('\\', "/")
}

fn num(x: f64) -> String {
    x.to_string()
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

struct Context<'a> {
    config: &'a RunConfig,
    corpus: Corpus,
    topics: Option<PaperTopics>,
}

impl Context<'_> {
    fn run_stage(&mut self, stage: Stage) -> Result<Vec<PathBuf>> {
        let dir = self.config.output.join(stage.as_str());
        fs::create_dir_all(&dir)?;
        match stage {
            Stage::Ingest => self.ingest(&dir),
            Stage::Stats => self.stats(&dir),
            Stage::Topics => self.topics(&dir),
            Stage::Citenet => self.citenet(&dir),
            Stage::Collabnet => self.collabnet(&dir),
            Stage::Predict => self.predict(&dir),
        }
    }

    fn paper_topics(&mut self) -> Result<&PaperTopics> {
        if self.topics.is_none() {
            let t = &self.config.topics;
            let clusterer = Dbscan { eps: t.eps, min_pts: t.min_pts };
            self.topics = Some(topics::cluster_papers(&self.corpus.graph, &clusterer)?);
        }
        Ok(self.topics.as_ref().expect("just set"))
    }

    fn ingest(&mut self, dir: &Path) -> Result<Vec<PathBuf>> {
        let graph = &self.corpus.graph;
        let graphml = dir.join("graph.graphml");
        write_text(&graphml, &export::knowledge_graph_graphml(graph).render())?;
        let dot = dir.join("graph.dot");
        write_text(&dot, &export::knowledge_graph_dot(graph))?;
        let rejections = dir.join("rejections.csv");
        let mut rejected: Vec<(&str, &str)> =
            self.corpus.exclusions.rejected.iter().map(|(r, why)| (r.id.as_str(), why.as_str())).collect();
        rejected.sort();
        write_csv(&rejections, &["id", "reason"], rejected.iter().map(|(id, why)| [*id, *why]))?;
        let parse_errors = dir.join("parse_errors.csv");
        write_csv(
            &parse_errors,
            &["line", "message"],
            self.corpus.parse_errors.iter().map(|e| [e.line.to_string(), e.message.clone()]),
        )?;
        let nodes: BTreeMap<&str, usize> = NodeType::ALL.iter().map(|&t| (t.as_str(), graph.count(t))).collect();
        let edges: BTreeMap<&str, usize> =
            EdgeType::ALL.iter().map(|&t| (t.as_str(), graph.edges_of(t).count())).collect();
        let anomalies: Vec<[&str; 2]> = graph
            .temporal_anomalies()
            .iter()
            .map(|e| [graph.node(e.src).node_ref.key.as_str(), graph.node(e.dst).node_ref.key.as_str()])
            .collect();
        let reasons: BTreeMap<&str, usize> =
            self.corpus.exclusions.counts().into_iter().map(|(r, n)| (r.as_str(), n)).collect();
        let summary = dir.join("ingest.json");
        write_json(
            &summary,
            &json!({
                "records_read": self.corpus.records_read,
                "parse_errors": self.corpus.parse_errors.len(),
                "kept": self.corpus.exclusions.kept.len(),
                "rejected": reasons,
                "nodes": nodes,
                "edges": edges,
                "year_range": graph.year_range(),
                "temporal_anomalies": anomalies,
            }),
        )?;
        Ok(vec![graphml, dot, rejections, parse_errors, summary])
    }

    fn stats(&mut self, dir: &Path) -> Result<Vec<PathBuf>> {
        let graph = &self.corpus.graph;
        let mut outputs = Vec::new();
        let pubs = stats::publications_per_year(graph);
        let (authors, cumulative) = stats::authors_per_year(graph);
        let fit_json = |s: &stats::YearSeries| match stats::fit_quadratic(s) {
            Ok(f) => json!({"a": f.a, "b": f.b, "c": f.c, "origin": f.origin, "r_squared": f.r_squared}),
            Err(e) => json!({"error": e.to_string()}),
        };
        let path = dir.join("publications.csv");
        write_csv(&path, &["year", "papers", "cumulative"], pubs.iter().zip(pubs.cumulative().values).map(|((y, v), c)| {
            [y.to_string(), num(v), num(c)]
        }))?;
        outputs.push(path);
        let path = dir.join("authors.csv");
        write_csv(
            &path,
            &["year", "authors", "cumulative_distinct"],
            authors.iter().zip(&cumulative.values).map(|((y, v), c)| [y.to_string(), num(v), num(*c)]),
        )?;
        outputs.push(path);
        let mut distributions = BTreeMap::new();
        for facet in Facet::ALL {
            let d = stats::distribution(graph, facet, self.config.stats.top_k);
            let path = dir.join(format!("distribution_{}.csv", facet.as_str()));
            write_csv(
                &path,
                &["label", "count", "share"],
                d.entries.iter().map(|s| [s.label.clone(), s.count.to_string(), num(s.share)]),
            )?;
            outputs.push(path);
            let entries: Vec<Value> =
                d.entries.iter().map(|s| json!({"label": s.label, "count": s.count, "share": s.share})).collect();
            distributions.insert(facet.as_str(), json!({"total": d.total, "entries": entries}));
        }
        let path = dir.join("stats.json");
        write_json(
            &path,
            &json!({
                "papers": graph.count(NodeType::Paper),
                "publications_fit": fit_json(&pubs),
                "authors_fit": fit_json(&authors),
                "cumulative_authors_fit": fit_json(&cumulative),
                "distributions": distributions,
            }),
        )?;
        outputs.push(path);
        Ok(outputs)
    }

    fn topics(&mut self, dir: &Path) -> Result<Vec<PathBuf>> {
        let cfg = &self.config.topics;
        let paper_topics = self.paper_topics()?.clone();
        let graph = &self.corpus.graph;
        let mut outputs = Vec::new();

        let summaries = topics::summarize_topics(graph, &paper_topics, cfg.top_terms);
        let topic_json: Vec<Value> = summaries
            .iter()
            .map(|s| {
                let terms: Vec<Value> = s.top_terms.iter().map(|(t, w)| json!({"term": t, "score": w})).collect();
                json!({"id": s.topic, "size": s.size, "top_terms": terms})
            })
            .collect();
        let path = dir.join("topics.json");
        write_json(
            &path,
            &json!({
                "eps": cfg.eps,
                "min_pts": cfg.min_pts,
                "topic_count": paper_topics.sizes.len(),
                "noise": paper_topics.labels.values().filter(|&&l| l < 0).count(),
                "topics": topic_json,
                "assignments": paper_topics.labels,
            }),
        )?;
        outputs.push(path);

        let centroids = topics::topic_centroids(graph, &paper_topics);
        let dendrogram = if centroids.len() >= 2 { Some(topics::hierarchical_topics(&centroids)) } else { None };
        let path = dir.join("dendrogram.json");
        let tree = dendrogram.as_ref().and_then(|d| d.tree()).map(|t| dendro_json(&t));
        let merges: Vec<Value> = dendrogram
            .iter()
            .flat_map(|d| &d.merges)
            .map(|m| json!({"left": m.left, "right": m.right, "height": m.height, "size": m.size}))
            .collect();
        write_json(&path, &json!({"leaves": centroids.len(), "merges": merges, "tree": tree}))?;
        outputs.push(path);

        // yearly trends of the clustered topics
        let (first, last) = graph.year_range().unwrap_or((0, -1));
        let mut years = Vec::new();
        let mut labels = Vec::new();
        for (_, node, _) in graph.papers() {
            years.push(node.year);
            labels.push(paper_topics.labels.get(&node.node_ref.key).copied().unwrap_or(-1));
        }
        let trends = topics::topic_trend(&topics::single_labels(&years, &labels), first, last, cfg.trend_mode.into());
        let path = dir.join("trends.csv");
        write_csv(
            &path,
            &["topic", "year", "value"],
            trends.iter().flat_map(|(t, s)| s.iter().map(move |(y, v)| [t.to_string(), y.to_string(), num(v)])),
        )?;
        outputs.push(path);
        let since = cfg.emerging_since.unwrap_or(last - 5);
        let count_trends = topics::topic_trend(&topics::single_labels(&years, &labels), first, last, topics::TrendMode::Count);
        let emerging = topics::emerging_topics(&count_trends, since, cfg.emerging_k);
        let path = dir.join("emerging.csv");
        write_csv(
            &path,
            &["topic", "growth_rate", "latest_count"],
            emerging.iter().map(|e| [e.topic.to_string(), num(e.growth_rate), num(e.latest_count)]),
        )?;
        outputs.push(path);

        // query-defined topics
        if let Some(qpath) = &cfg.queries {
            let text = fs::read_to_string(qpath).with_context(|| format!("reading {}", qpath.display()))?;
            let queries = topics::parse_query_file(&text)?;
            let docs: Vec<(String, String, i32)> = graph
                .papers()
                .map(|(_, n, a)| (n.node_ref.key.clone(), format!("{} {}", a.title, a.abstract_text), n.year))
                .collect();
            let assigned = topics::assign_by_query(&queries, docs.iter().map(|(id, t, _)| (id.as_str(), t.as_str())));
            let path = dir.join("query_assignments.csv");
            write_csv(
                &path,
                &["paper", "topic"],
                assigned.iter().flat_map(|(p, ts)| ts.iter().map(move |t| [p.clone(), t.clone()])),
            )?;
            outputs.push(path);
            let multi: Vec<(i32, BTreeSet<String>)> =
                docs.iter().map(|(id, _, y)| (*y, assigned.get(id).cloned().unwrap_or_default())).collect();
            let qtrends = topics::topic_trend(&multi, first, last, cfg.trend_mode.into());
            let path = dir.join("query_trends.csv");
            write_csv(
                &path,
                &["topic", "year", "value"],
                qtrends.iter().flat_map(|(t, s)| s.iter().map(move |(y, v)| [t.clone(), y.to_string(), num(v)])),
            )?;
            outputs.push(path);
        }

        // theme linkage
        let themes = if cfg.themes.is_empty() {
            summaries
                .iter()
                .map(|s| (format!("topic_{}", s.topic), s.top_terms.iter().take(5).map(|(t, _)| t.clone()).collect()))
                .collect()
        } else {
            cfg.themes.clone()
        };
        let papers: Vec<Vec<String>> = graph
            .papers()
            .map(|(_, _, a)| litla_core::text::tokens(&format!("{} {}", a.title, a.abstract_text)))
            .collect();
        let linkage = topics::topic_linkage(&themes, &papers, cfg.linkage_epsilon)?;
        let matrix_rows = |m: &[Vec<f64>]| -> Vec<Vec<String>> {
            linkage
                .themes
                .iter()
                .zip(m)
                .map(|(t, row)| std::iter::once(t.clone()).chain(row.iter().map(|&x| num(x))).collect())
                .collect()
        };
        let header: Vec<&str> = std::iter::once("theme").chain(linkage.themes.iter().map(String::as_str)).collect();
        let path = dir.join("linkage.csv");
        write_csv(&path, &header, matrix_rows(&linkage.weights))?;
        outputs.push(path);
        let path = dir.join("linkage_shares.csv");
        write_csv(&path, &header, matrix_rows(&linkage.shares()))?;
        outputs.push(path);
        let path = dir.join("linkage_raw.csv");
        write_csv(&path, &header, matrix_rows(&linkage.raw))?;
        outputs.push(path);
        Ok(outputs)
    }

    fn citenet(&mut self, dir: &Path) -> Result<Vec<PathBuf>> {
        let cfg = &self.config.citenet;
        let graph = &self.corpus.graph;
        let citations = project(graph, Projection::Citation);
        let mut outputs = Vec::new();

        let growth = citenet::growth_series(&citations);
        let path = dir.join("growth.csv");
        write_csv(
            &path,
            &["year", "nodes", "edges"],
            (0..growth.len()).map(|i| [growth.years[i].to_string(), growth.nodes[i].to_string(), growth.edges[i].to_string()]),
        )?;
        outputs.push(path);

        let (n, e): (Vec<f64>, Vec<f64>) = (0..growth.len())
            .filter(|&i| growth.nodes[i] > 0 && growth.edges[i] > 0)
            .map(|i| (growth.nodes[i] as f64, growth.edges[i] as f64))
            .unzip();
        let densification = citenet::fit_power_law_ls(&n, &e);
        let in_degrees: Vec<u64> = (0..citations.node_count()).map(|i| citations.in_degree(i) as u64).collect();
        let degree = citenet::fit_power_law_mle(&in_degrees, cfg.degree_x_min);
        let curve = citenet::preferential_attachment_curve(&citations);
        let path = dir.join("attachment.csv");
        write_csv(
            &path,
            &["k_lo", "k_hi", "mean_k", "mean_gain", "observations"],
            curve.zero.iter().chain(&curve.bins).map(|b| {
                [b.k_lo.to_string(), b.k_hi.to_string(), num(b.mean_k), num(b.mean_gain), b.observations.to_string()]
            }),
        )?;
        outputs.push(path);
        let path = dir.join("fits.json");
        write_json(
            &path,
            &json!({
                "densification": fit_value(densification.map_err(|e| e.to_string())),
                "degree": fit_value(degree.map_err(|e| e.to_string())),
                "attachment": fit_value(curve.fit.ok_or_else(|| "fewer than three bins with positive gain".to_string())),
            }),
        )?;
        outputs.push(path);

        let index = CitationIndex::from_graph(graph);
        let cd_config = CdConfig { window: cfg.cd_window, exclude_self_citations: cfg.exclude_self_citations };
        let results: Vec<citenet::CdResult> = (0..index.len())
            .into_par_iter()
            .map(|i| citenet::cd_index(&index, index.key(i), &cd_config))
            .collect::<litla_core::Result<_>>()?;
        let path = dir.join("cd_index.csv");
        write_csv(
            &path,
            &["paper", "year", "cd", "n_t", "f_count", "b_count"],
            results.iter().map(|r| {
                [r.paper.clone(), r.year.to_string(), opt_num(r.cd), r.n_t.to_string(), r.f_count.to_string(), r.b_count.to_string()]
            }),
        )?;
        outputs.push(path);
        let yearly = citenet::cd_index_yearly(&results);
        let path = dir.join("cd_yearly.csv");
        write_csv(&path, &["year", "mean_cd"], yearly.iter().map(|(y, v)| [y.to_string(), num(v)]))?;
        outputs.push(path);

        let ttr = citenet::type_token_ratio(&citenet::texts_by_year(graph));
        let path = dir.join("ttr.csv");
        write_csv(&path, &["year", "ttr"], ttr.iter().map(|(y, v)| [y.to_string(), num(v)]))?;
        outputs.push(path);

        let ranker = MutualReinforcement { decay: cfg.decay, damping: cfg.damping, tol: cfg.tol, max_iter: cfg.max_iter };
        let k = cfg.backbone_k.min(graph.count(NodeType::Paper));
        let backbone = citenet::main_path_backbone_with(
            graph,
            &ranker,
            &citenet::BackboneConfig { k, trim: cfg.trim_mode(), norm: cfg.norm() },
        )?;
        let path = dir.join("backbone.graphml");
        write_text(&path, &export::backbone_graphml(&backbone).render())?;
        outputs.push(path);
        Ok(outputs)
    }

    fn collabnet(&mut self, dir: &Path) -> Result<Vec<PathBuf>> {
        let cfg = self.config.collabnet.clone();
        let topics = self.paper_topics().ok().cloned();
        let graph = &self.corpus.graph;
        let mut outputs = Vec::new();
        let coauthors = project(graph, Projection::Coauthorship);

        let yearly = collabnet::yearly_metrics(graph, topics.as_ref(), cfg.exclude_unknown);
        let assort = |a: &collabnet::AssortativityResult| {
            json!({"r": a.r, "edges": a.edges, "categories": a.categories, "mixing_matrix": a.mixing_matrix})
        };
        let per_year: Vec<Value> = yearly
            .iter()
            .map(|m| {
                json!({
                    "year": m.year,
                    "authors": m.authors,
                    "edges": m.edges,
                    "components": m.components.count,
                    "largest_component": m.components.largest_size,
                    "diameter": m.components.diameter_of_largest,
                    "nationality_assortativity": assort(&m.nationality),
                    "topic_assortativity": m.topic.as_ref().map(assort),
                })
            })
            .collect();

        let pr_config = PageRankConfig { damping: cfg.pagerank_damping, tol: cfg.pagerank_tol, max_iter: cfg.pagerank_max_iter };
        let k = cfg.top_k.min(coauthors.node_count());
        let sub = collabnet::top_active_subnetwork(&coauthors, k, &pr_config)?;
        let path = dir.join("top_authors.graphml");
        write_text(&path, &export::active_subnetwork_graphml(&sub).render())?;
        outputs.push(path);
        let betweenness = collabnet::betweenness(&coauthors);
        let top: Vec<Value> = (0..sub.graph.node_count())
            .map(|i| {
                let key = sub.graph.key(i);
                let full = coauthors.index_of(key).expect("subnetwork node");
                json!({
                    "author": key,
                    "pagerank": sub.pagerank[i],
                    "betweenness": betweenness[full],
                    "degree": coauthors.degree(full),
                    "entry_year": sub.graph.year(i),
                })
            })
            .collect();
        let cliques: BTreeMap<String, u64> =
            (3..=5).map(|k| (k.to_string(), collabnet::count_k_cliques(&sub.graph, k))).collect();

        let report = collabnet::components(&coauthors);
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for &s in &report.sizes {
            *histogram.entry(s).or_default() += 1;
        }
        let path = dir.join("component_sizes.csv");
        write_csv(&path, &["size", "components"], histogram.iter().map(|(s, c)| [s.to_string(), c.to_string()]))?;
        outputs.push(path);
        let degrees = collabnet::degree_distribution(&coauthors, cfg.degree_lcc_only);
        let path = dir.join("degree_distribution.csv");
        write_csv(&path, &["degree", "authors"], degrees.iter().map(|(d, c)| [d.to_string(), c.to_string()]))?;
        outputs.push(path);
        let hops = collabnet::hop_coverage(&coauthors);
        let path = dir.join("hop_coverage.csv");
        write_csv(&path, &["hops", "fraction"], hops.iter().map(|(k, f)| [k.to_string(), num(*f)]))?;
        outputs.push(path);

        let path = dir.join("metrics.json");
        write_json(
            &path,
            &json!({
                "years": per_year,
                "final": {
                    "authors": coauthors.node_count(),
                    "edges": coauthors.edge_count(),
                    "components": report.count,
                    "largest_component": report.largest_size,
                    "diameter": report.diameter_of_largest,
                    "hop_source": collabnet::hop_source(&coauthors).map(|i| coauthors.key(i).to_string()),
                    "top_authors": top,
                    "top_author_cliques": cliques,
                },
            }),
        )?;
        outputs.push(path);
        Ok(outputs)
    }

    fn predict(&mut self, dir: &Path) -> Result<Vec<PathBuf>> {
        let cfg = &self.config.predict;
        let graph = &self.corpus.graph;
        let history = GraphHistory::keywords(graph);
        let (first, last) = history.year_range().ok_or_else(|| anyhow!("no keywords in the corpus"))?;
        let target = cfg.target_year.unwrap_or(last);
        let sampling = SamplingConfig { negative_ratio: cfg.negative_ratio, seed: self.config.seed };
        let extractor = TopologicalFeatures;
        let mut train = Vec::new();
        let mut train_years = Vec::new();
        for year in first + 1..target {
            match predict::build_training_set(&history, year, &extractor, &sampling) {
                Ok(samples) => {
                    train_years.push(year);
                    train.extend(samples);
                }
                Err(litla_core::Error::DegenerateYear(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        let training = predict::train_on_samples(&train, &cfg.gbdt(self.config.seed))
            .context("training on the years before the target year")?;
        let model = &training.model;
        let path_model = dir.join("model.json");
        write_json(&path_model, model)?;

        let test = predict::build_training_set(&history, target, &extractor, &sampling);
        let evaluation = match &test {
            Ok(samples) => {
                let scores: Vec<f64> = samples.iter().map(|s| model.raw_score(&s.features)).collect();
                let labels: Vec<bool> = samples.iter().map(|s| s.label == Some(true)).collect();
                let auc = predict::evaluate_auc(&scores, &labels).ok();
                json!({
                    "test_samples": samples.len(),
                    "test_positives": labels.iter().filter(|&&l| l).count(),
                    "auc": auc,
                })
            }
            Err(e) => json!({"error": e.to_string()}),
        };
        let candidates = predict::candidate_pairs(&history, target, cfg.two_hop_candidates);
        let ranked = predict::predict_links(model, &history, target, &candidates, cfg.top_n, &extractor)?;
        let path_pred = dir.join("predictions.csv");
        write_csv(
            &path_pred,
            &["keyword_a", "keyword_b", "probability", "rank"],
            ranked.iter().map(|p| [p.u.clone(), p.v.clone(), num(p.probability), p.rank.to_string()]),
        )?;
        let path_eval = dir.join("evaluation.json");
        write_json(
            &path_eval,
            &json!({
                "target_year": target,
                "train_years": train_years,
                "train_samples": train.len(),
                "train_positives": train.iter().filter(|s| s.label == Some(true)).count(),
                "features": extractor.names(),
                "train_loss": training.loss,
                "held_out": evaluation,
                "candidates": candidates.len(),
            }),
        )?;
        Ok(vec![path_model, path_pred, path_eval])
    }
}

fn fit_value(fit: std::result::Result<citenet::PowerLawFit, String>) -> Value {
    match fit {
        Ok(f) => json!({
            "alpha": f.alpha,
            "method": f.method.as_str(),
            "x_min": f.x_min,
            "r_squared": f.r_squared,
            "intercept": f.intercept,
            "alpha_approx": f.alpha_approx,
            "n": f.n_samples,
        }),
        Err(e) => json!({"error": e}),
    }
}

fn dendro_json(node: &DendroNode) -> Value {
    match node {
        DendroNode::Leaf(t) => json!({"topic": t}),
        DendroNode::Merge { height, left, right } => {
            json!({"height": height, "left": dendro_json(left), "right": dendro_json(right)})
        }
    }
}
