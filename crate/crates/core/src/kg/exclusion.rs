//! Corpus exclusion protocol.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::record::PaperRecord;
use crate::text::canonical;

/// Primary reason a record was dropped. When several predicates fail the
/// first one in declaration order is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RejectReason {
    Language,
    MinPages,
    DocType,
    ExtendedVersion,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::Language => "language",
            RejectReason::MinPages => "min_pages",
            RejectReason::DocType => "doc_type",
            RejectReason::ExtendedVersion => "extended_version",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionPolicy {
    pub min_pages: u32,
    /// Canonical (lowercase) language names.
    pub allowed_languages: BTreeSet<String>,
    /// Canonical document types to drop.
    pub excluded_doc_types: BTreeSet<String>,
    pub drop_extended_versions: bool,
    /// Ids judged to be extended versions of conference papers.
    pub extended_version_ids: BTreeSet<String>,
}

impl Default for ExclusionPolicy {
    fn default() -> Self {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        ExclusionPolicy {
            min_pages: 4,
            allowed_languages: set(&["english"]),
            excluded_doc_types: set(&["book", "keynote", "workshop paper", "unpublished"]),
            drop_extended_versions: true,
            extended_version_ids: BTreeSet::new(),
        }
    }
}

impl ExclusionPolicy {
    pub fn check(&self, record: &PaperRecord) -> Option<RejectReason> {
        if !self.allowed_languages.contains(&canonical(&record.language)) {
            return Some(RejectReason::Language);
        }
        if record.page_count < self.min_pages {
            return Some(RejectReason::MinPages);
        }
        if self.excluded_doc_types.contains(&canonical(&record.doc_type)) {
            return Some(RejectReason::DocType);
        }
        if self.drop_extended_versions && self.extended_version_ids.contains(record.id.trim()) {
            return Some(RejectReason::ExtendedVersion);
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionOutcome {
    pub kept: Vec<PaperRecord>,
    pub rejected: Vec<(PaperRecord, RejectReason)>,
}

impl ExclusionOutcome {
    pub fn counts(&self) -> BTreeMap<RejectReason, usize> {
        let mut counts = BTreeMap::new();
        for (_, reason) in &self.rejected {
            *counts.entry(*reason).or_insert(0) += 1;
        }
        counts
    }
}

/// Splits records into kept and rejected, preserving input order in both.
pub fn apply_exclusions(records: Vec<PaperRecord>, policy: &ExclusionPolicy) -> ExclusionOutcome {
    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    for record in records {
        match policy.check(&record) {
            None => kept.push(record),
            Some(reason) => rejected.push((record, reason)),
        }
    }
    ExclusionOutcome { kept, rejected }
}
