//! Raw publication records as they arrive from a bibliographic source.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub const MIN_YEAR: i32 = 1900;
pub const MAX_YEAR: i32 = 2100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PubType {
    Journal,
    Conference,
    #[default]
    Other,
}

impl PubType {
    pub fn as_str(self) -> &'static str {
        match self {
            PubType::Journal => "journal",
            PubType::Conference => "conference",
            PubType::Other => "other",
        }
    }
}

/// Why a paper cites another, as annotated on a citation statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Intent {
    Background,
    Method,
    Extension,
    Comparison,
}

impl Intent {
    pub fn as_str(self) -> &'static str {
        match self {
            Intent::Background => "background",
            Intent::Method => "method",
            Intent::Extension => "extension",
            Intent::Comparison => "comparison",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CitationStatement {
    pub text: String,
    #[serde(default)]
    pub intent: Option<Intent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuthorEntry {
    pub name: String,
    /// Free-text affiliation addresses, typically with the country last.
    #[serde(default)]
    pub affiliations: Vec<String>,
}

/// One bibliographic entry.
///
/// Field names are the line-delimited input schema: `id`, `title` and `year`
/// are required, everything else defaults to empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract", default)]
    pub abstract_text: String,
    #[serde(default)]
    pub authors: Vec<AuthorEntry>,
    pub year: i32,
    #[serde(default)]
    pub venue: String,
    #[serde(default)]
    pub pub_type: PubType,
    #[serde(default)]
    pub author_keywords: Vec<String>,
    #[serde(default)]
    pub subject_categories: Vec<String>,
    #[serde(default)]
    pub publisher: String,
    #[serde(default)]
    pub citation_count: u64,
    #[serde(default)]
    pub page_count: u32,
    #[serde(default)]
    pub references: Vec<String>,
    #[serde(default)]
    pub language: String,
    #[serde(default)]
    pub doc_type: String,
    #[serde(default)]
    pub citation_statements: Option<Vec<CitationStatement>>,
    #[serde(default)]
    pub extracted_keywords: Vec<String>,
    #[serde(default)]
    pub embedding: Option<Vec<f64>>,
}

/// A record that deserialized but breaks a value constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordViolation {
    EmptyId,
    YearOutOfRange(i32),
    NonFiniteEmbedding,
    EmbeddingDimension { expected: usize, got: usize },
}

impl fmt::Display for RecordViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordViolation::EmptyId => f.write_str("`id` must be non-empty"),
            RecordViolation::YearOutOfRange(y) => {
                write!(f, "`year` {y} outside [{MIN_YEAR}, {MAX_YEAR}]")
            }
            RecordViolation::NonFiniteEmbedding => f.write_str("`embedding` has non-finite values"),
            RecordViolation::EmbeddingDimension { expected, got } => {
                write!(f, "`embedding` has dimension {got}, corpus uses {expected}")
            }
        }
    }
}

impl PaperRecord {
    /// Minimal record with the required fields; used by tests and builders.
    pub fn new(id: impl Into<String>, title: impl Into<String>, year: i32) -> Self {
        PaperRecord {
            id: id.into(),
            title: title.into(),
            abstract_text: String::new(),
            authors: Vec::new(),
            year,
            venue: String::new(),
            pub_type: PubType::Other,
            author_keywords: Vec::new(),
            subject_categories: Vec::new(),
            publisher: String::new(),
            citation_count: 0,
            page_count: 0,
            references: Vec::new(),
            language: String::new(),
            doc_type: String::new(),
            citation_statements: None,
            extracted_keywords: Vec::new(),
            embedding: None,
        }
    }

    /// Checks per-record constraints. `embedding_dim` is the dimension fixed
    /// by earlier records of the corpus, if any.
    pub fn validate(&self, embedding_dim: Option<usize>) -> Result<(), RecordViolation> {
        if self.id.trim().is_empty() {
            return Err(RecordViolation::EmptyId);
        }
        if !(MIN_YEAR..=MAX_YEAR).contains(&self.year) {
            return Err(RecordViolation::YearOutOfRange(self.year));
        }
        if let Some(e) = &self.embedding {
            if e.iter().any(|v| !v.is_finite()) {
                return Err(RecordViolation::NonFiniteEmbedding);
            }
            if let Some(expected) = embedding_dim {
                if e.len() != expected {
                    return Err(RecordViolation::EmbeddingDimension { expected, got: e.len() });
                }
            }
        }
        Ok(())
    }

    pub fn author_names(&self) -> impl Iterator<Item = &str> {
        self.authors.iter().map(|a| a.name.as_str())
    }
}
