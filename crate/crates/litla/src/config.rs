//! Run configuration loaded from TOML.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use litla_core::citenet::{CocitationNorm, TrimMode};
use litla_core::kg::ExclusionPolicy;
use litla_core::predict::GbdtParams;
use litla_core::text::canonical;
use litla_core::topics::TrendMode;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("config {path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Records file; relative paths resolve against the config directory.
    pub input: PathBuf,
    pub output: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub exclusion: ExclusionConfig,
    #[serde(default)]
    pub stats: StatsConfig,
    #[serde(default)]
    pub topics: TopicsConfig,
    #[serde(default)]
    pub citenet: CitenetConfig,
    #[serde(default)]
    pub collabnet: CollabnetConfig,
    #[serde(default)]
    pub predict: PredictConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExclusionConfig {
    pub min_pages: u32,
    pub allowed_languages: Vec<String>,
    pub excluded_doc_types: Vec<String>,
    pub drop_extended_versions: bool,
    pub extended_version_ids: Vec<String>,
}

impl Default for ExclusionConfig {
    fn default() -> Self {
        let p = ExclusionPolicy::default();
        ExclusionConfig {
            min_pages: p.min_pages,
            allowed_languages: p.allowed_languages.into_iter().collect(),
            excluded_doc_types: p.excluded_doc_types.into_iter().collect(),
            drop_extended_versions: p.drop_extended_versions,
            extended_version_ids: p.extended_version_ids.into_iter().collect(),
        }
    }
}

impl ExclusionConfig {
    pub fn policy(&self) -> ExclusionPolicy {
        ExclusionPolicy {
            min_pages: self.min_pages,
            allowed_languages: self.allowed_languages.iter().map(|s| canonical(s)).collect(),
            excluded_doc_types: self.excluded_doc_types.iter().map(|s| canonical(s)).collect(),
            drop_extended_versions: self.drop_extended_versions,
            extended_version_ids: self.extended_version_ids.iter().map(|s| s.trim().to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StatsConfig {
    /// Entries kept per facet distribution; all when absent.
    pub top_k: Option<usize>,
}

impl Default for StatsConfig {
    fn default() -> Self {
        StatsConfig { top_k: Some(20) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendModeConfig {
    Count,
    Share,
    ShareOfAll,
}

impl From<TrendModeConfig> for TrendMode {
    fn from(m: TrendModeConfig) -> Self {
        match m {
            TrendModeConfig::Count => TrendMode::Count,
            TrendModeConfig::Share => TrendMode::Share,
            TrendModeConfig::ShareOfAll => TrendMode::ShareOfAll,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TopicsConfig {
    pub eps: f64,
    pub min_pts: usize,
    pub top_terms: usize,
    /// `name: expression` query file for multi-label assignment.
    pub queries: Option<PathBuf>,
    pub trend_mode: TrendModeConfig,
    /// First year of the emerging-topic window; defaults to five years
    /// before the last corpus year.
    pub emerging_since: Option<i32>,
    pub emerging_k: usize,
    pub linkage_epsilon: f64,
    /// Theme → keyword phrases for the linkage matrix.
    pub themes: BTreeMap<String, Vec<String>>,
}

impl Default for TopicsConfig {
    fn default() -> Self {
        TopicsConfig {
            eps: 0.5,
            min_pts: 4,
            top_terms: 10,
            queries: None,
            trend_mode: TrendModeConfig::Count,
            emerging_since: None,
            emerging_k: 10,
            linkage_epsilon: 0.05,
            themes: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrimConfig {
    OneHop,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormConfig {
    MinMax,
    ZScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CitenetConfig {
    pub decay: f64,
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Years after publication within which citers count; all when absent.
    pub cd_window: Option<i32>,
    pub exclude_self_citations: bool,
    pub backbone_k: usize,
    pub trim: TrimConfig,
    pub cocitation_norm: NormConfig,
    pub degree_x_min: u64,
}

impl Default for CitenetConfig {
    fn default() -> Self {
        CitenetConfig {
            decay: 0.2,
            damping: 0.85,
            tol: 1e-10,
            max_iter: 1000,
            cd_window: None,
            exclude_self_citations: true,
            backbone_k: 40,
            trim: TrimConfig::OneHop,
            cocitation_norm: NormConfig::MinMax,
            degree_x_min: 1,
        }
    }
}

impl CitenetConfig {
    pub fn trim_mode(&self) -> TrimMode {
        match self.trim {
            TrimConfig::OneHop => TrimMode::OneHop,
            TrimConfig::Full => TrimMode::Full,
        }
    }

    pub fn norm(&self) -> CocitationNorm {
        match self.cocitation_norm {
            NormConfig::MinMax => CocitationNorm::MinMax,
            NormConfig::ZScore => CocitationNorm::ZScore,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CollabnetConfig {
    pub pagerank_damping: f64,
    pub pagerank_tol: f64,
    pub pagerank_max_iter: usize,
    pub top_k: usize,
    pub degree_lcc_only: bool,
    pub exclude_unknown: bool,
}

impl Default for CollabnetConfig {
    fn default() -> Self {
        CollabnetConfig {
            pagerank_damping: 0.85,
            pagerank_tol: 1e-12,
            pagerank_max_iter: 1000,
            top_k: 50,
            degree_lcc_only: false,
            exclude_unknown: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PredictConfig {
    /// Held-out year; defaults to the last corpus year.
    pub target_year: Option<i32>,
    pub negative_ratio: f64,
    pub n_trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub min_leaf: usize,
    pub subsample: f64,
    pub top_n: usize,
    /// Rank only unconnected pairs that share a neighbor.
    pub two_hop_candidates: bool,
}

impl Default for PredictConfig {
    fn default() -> Self {
        let g = GbdtParams::default();
        PredictConfig {
            target_year: None,
            negative_ratio: 5.0,
            n_trees: g.n_trees,
            max_depth: g.max_depth,
            learning_rate: g.learning_rate,
            min_leaf: g.min_leaf,
            subsample: g.subsample,
            top_n: 100,
            two_hop_candidates: false,
        }
    }
}

impl PredictConfig {
    pub fn gbdt(&self, seed: u64) -> GbdtParams {
        GbdtParams {
            n_trees: self.n_trees,
            max_depth: self.max_depth,
            learning_rate: self.learning_rate,
            min_leaf: self.min_leaf,
            subsample: self.subsample,
            seed,
        }
    }
}

impl RunConfig {
    /// Parses a config file, resolves relative paths against its directory
    /// and checks that the inputs exist.
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        let mut config: RunConfig =
            toml::from_str(&text).map_err(|e| ConfigError::Parse { path: path.into(), message: e.to_string() })?;
        let base = path.parent().unwrap_or(Path::new("."));
        config.input = base.join(&config.input);
        config.output = base.join(&config.output);
        if let Some(q) = &config.topics.queries {
            config.topics.queries = Some(base.join(q));
        }
        config.check().map_err(|message| ConfigError::Invalid { path: path.into(), message })?;
        Ok(config)
    }

    fn check(&self) -> Result<(), String> {
        if !self.input.is_file() {
            return Err(format!("input {} does not exist", self.input.display()));
        }
        if let Some(q) = &self.topics.queries {
            if !q.is_file() {
                return Err(format!("query file {} does not exist", q.display()));
            }
        }
        let c = &self.citenet;
        if !(0.0..1.0).contains(&c.damping) || c.decay < 0.0 || c.tol <= 0.0 || c.backbone_k < 2 {
            return Err("citenet: need 0 ≤ damping < 1, decay ≥ 0, tol > 0, backbone_k ≥ 2".into());
        }
        let t = &self.topics;
        if t.eps <= 0.0 || t.min_pts < 2 || !(0.0..=1.0).contains(&t.linkage_epsilon) {
            return Err("topics: need eps > 0, min_pts ≥ 2, 0 ≤ linkage_epsilon ≤ 1".into());
        }
        let p = &self.predict;
        if p.negative_ratio < 0.0 || !(p.learning_rate > 0.0 && p.learning_rate <= 1.0) || p.max_depth == 0 {
            return Err("predict: need negative_ratio ≥ 0, 0 < learning_rate ≤ 1, max_depth ≥ 1".into());
        }
        if !(self.collabnet.pagerank_damping > 0.0 && self.collabnet.pagerank_damping < 1.0) {
            return Err("collabnet: pagerank_damping must lie in (0, 1)".into());
        }
        Ok(())
    }

    /// SHA-256 of the effective configuration, with paths as given.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}
