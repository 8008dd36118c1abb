//! Citation-network analytics: growth and densification, degree and
//! attachment laws, the CD disruptiveness index, vocabulary diversity and
//! main-path backbone extraction.

mod attachment;
mod cd;
mod growth;
mod mainpath;
mod powerlaw;
mod rank;
mod ttr;

pub use attachment::{preferential_attachment_curve, AttachmentBin, AttachmentCurve};
pub use cd::{cd_index, cd_index_all, cd_index_yearly, CdConfig, CdResult, CitationIndex};
pub use growth::{growth_series, GrowthSeries};
pub use mainpath::{
    citation_dag, cocitations, main_path_backbone, main_path_backbone_with, reference_jaccard, top_k,
    topological_order, trim_network, weight_edges, BackboneConfig, BackboneEdge, BackboneGraph,
    BackboneNode, CitationDag, CocitationNorm, TrimMode,
};
pub use powerlaw::{fit_power_law_ls, fit_power_law_mle, hurwitz_zeta, PowerLawFit, PowerLawMethod};
pub use rank::{rank_essential, EssentialRanker, MutualReinforcement, RankInput, RankScores};
pub use ttr::{texts_by_year, type_token_ratio};
