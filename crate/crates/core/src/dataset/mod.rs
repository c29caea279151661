//! Dataset construction: documents, queries, graded relevance judgments,
//! query selection and deterministic splits.
//!
//! The construction scheme: every article yields a document (its body with
//! the title line and first sentence removed) and a query (its cleaned
//! title, or first sentence in first-sentence mode). The query built from
//! an article is maximally relevant (grade 2) to that article's own
//! document, and relevant (grade 1) to the document of every article whose
//! first sentence links to it. Grade-0 judgments are implicit: qrels files
//! contain only positive grades.

mod build;
mod files;
mod graph;
mod split;
mod stats;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::CorpusError;
use crate::textproc::CleanText;

pub use build::{
    build_dataset, build_documents, build_qrels, build_queries, select_queries, JsonlFileSource,
    MemorySource, RecordSource,
};
pub use files::{
    read_documents_csv, read_qrels, read_qrels_file, read_queries_csv, write_bundle, write_qrels,
};
pub use graph::{build_link_graph, TopicLinkGraph};
pub use split::{split_queries, SplitAssignment, SplitFractions};
pub use stats::{dataset_stats, DatasetStats};

/// One retrievable document. The text is cleaned and contains neither the
/// source article's title line nor its first sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    /// Equals the source article id.
    pub doc_id: String,
    pub text: CleanText,
}

/// How query text is derived from an article.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryMode {
    /// Short, well-defined queries from article titles.
    Title,
    /// Long, noisy queries from article first sentences.
    FirstSentence,
}

impl QueryMode {
    pub fn label(self) -> &'static str {
        match self {
            QueryMode::Title => "title",
            QueryMode::FirstSentence => "first-sentence",
        }
    }
}

/// One query. `query_id` equals the source article id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub query_id: String,
    pub text: CleanText,
    pub source_mode: QueryMode,
}

/// A positive relevance judgment. Grade 2 marks the document built from the
/// query's own article; grade 1 marks documents whose article links to the
/// query's article from its first sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelevanceJudgment {
    pub query_id: String,
    pub doc_id: String,
    pub grade: u8,
}

/// Queries or qrels partitioned into the three standard splits.
#[derive(Debug, Clone)]
pub struct PerSplit<T> {
    pub train: Vec<T>,
    pub validation: Vec<T>,
    pub test: Vec<T>,
}

impl<T> Default for PerSplit<T> {
    fn default() -> Self {
        PerSplit {
            train: Vec::new(),
            validation: Vec::new(),
            test: Vec::new(),
        }
    }
}

impl<T> PerSplit<T> {
    pub fn total(&self) -> usize {
        self.train.len() + self.validation.len() + self.test.len()
    }

    pub fn iter_all(&self) -> impl Iterator<Item = &T> {
        self.train.iter().chain(self.validation.iter()).chain(self.test.iter())
    }

    /// (name, items) pairs in canonical order.
    pub fn named(&self) -> [(&'static str, &[T]); 3] {
        [
            ("train", self.train.as_slice()),
            ("validation", self.validation.as_slice()),
            ("test", self.test.as_slice()),
        ]
    }
}

/// Everything one build produces.
#[derive(Debug, Clone)]
pub struct DatasetBundle {
    pub documents: Vec<Document>,
    pub queries: PerSplit<Query>,
    pub qrels: PerSplit<RelevanceJudgment>,
    pub manifest: BuildManifest,
}

/// Build parameters. Defaults mirror the standard construction: queries at
/// most 10 words, at least 5 relevant documents per kept query, stub
/// documents under 10 tokens dropped, lowercasing on, 80/10/10 splits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildConfig {
    pub query_mode: QueryMode,
    pub min_rel_docs: usize,
    pub max_query_words: usize,
    pub min_doc_tokens: usize,
    pub lowercase: bool,
    pub fractions: SplitFractions,
    pub seed: u64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            query_mode: QueryMode::Title,
            min_rel_docs: 5,
            max_query_words: 10,
            min_doc_tokens: 10,
            lowercase: true,
            fractions: SplitFractions::default(),
            seed: 0,
        }
    }
}

/// Records excluded along the way, by reason. Exclusions are bookkeeping,
/// never errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ExclusionCounts {
    /// Input lines rejected by ingestion (malformed JSON, failed validation).
    pub invalid_records: u64,
    /// Records whose id was already seen; the first occurrence wins.
    pub duplicate_ids: u64,
    /// Articles whose title collides with a lower-id article's title; they
    /// lose query eligibility and link-target resolution.
    pub duplicate_titles: u64,
    /// First-sentence link targets that resolved to no article title.
    pub unresolved_link_targets: u64,
    /// Documents dropped for having fewer than `min_doc_tokens` tokens.
    pub short_documents: u64,
    /// Queries dropped for cleaning to the empty string.
    pub empty_queries: u64,
    /// Queries dropped for exceeding `max_query_words`.
    pub long_queries: u64,
    /// Queries dropped because an earlier article produced identical text.
    pub duplicate_query_texts: u64,
    /// Selected-out queries: self-document missing after filtering.
    pub queries_missing_self_document: u64,
    /// Selected-out queries: fewer than `min_rel_docs` relevant documents.
    pub queries_below_min_rel: u64,
}

/// Per-split item counts for the manifest.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: u64,
    pub validation: u64,
    pub test: u64,
    pub total: u64,
}

impl SplitCounts {
    fn of<T>(split: &PerSplit<T>) -> Self {
        SplitCounts {
            train: split.train.len() as u64,
            validation: split.validation.len() as u64,
            test: split.test.len() as u64,
            total: split.total() as u64,
        }
    }
}

/// Reproducibility record written next to every bundle: the full
/// configuration, the seed, a digest of the input, and all counts. Contains
/// no timestamps, so identical inputs produce byte-identical manifests.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildManifest {
    pub config: BuildConfig,
    pub input_digest: String,
    pub articles_ingested: u64,
    pub documents: u64,
    pub queries: SplitCounts,
    pub qrels: SplitCounts,
    pub exclusions: ExclusionCounts,
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
}
