//! Core library for building ad-hoc information-retrieval datasets from
//! wiki-style article collections, indexing them, ranking with Okapi BM25,
//! and evaluating run files.
//!
//! The pipeline stages map onto the top-level modules:
//!
//! * [`corpus`]: parse article dumps (JSON lines or a bounded wikitext
//!   converter) into validated [`corpus::ArticleRecord`]s.
//! * [`textproc`]: text cleaning for dataset emission, plus the separate
//!   search-time analysis chain (stopword removal + Porter stemming) used
//!   only by the index and ranker.
//! * [`dataset`]: construct documents, queries, graded relevance judgments
//!   and train/validation/test splits from a record stream.
//! * [`index`]: immutable inverted index with the statistics BM25 needs.
//! * [`bm25`]: Okapi BM25 scoring and top-k run-file generation.
//! * [`eval`]: P@k / nDCG / MAP over TREC run files and qrels, paired
//!   t-tests with Bonferroni correction, and LaTeX result tables.

pub mod bm25;
pub mod corpus;
pub mod dataset;
pub mod eval;
pub mod index;
pub mod textproc;
pub mod util;
