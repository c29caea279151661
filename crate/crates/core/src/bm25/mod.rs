//! Okapi BM25 scoring and top-k ranking over the inverted index.
//!
//! score(q, d) = sum over query term occurrences of
//!     idf_t * tf_td * (k1 + 1) / (tf_td + k1 * (1 - b + b * |d| / avgdl))
//! with idf_t = ln((|C| + 1) / df_t). A term occurring twice in the query
//! contributes its summand twice. Only documents sharing at least one term
//! with the query are scored, so every emitted score is positive.

mod run;

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::index::InvertedIndex;
use crate::textproc::{analyze_for_search, clean_text, StopwordSet};

pub use run::{read_run, write_run};

/// BM25 hyperparameters and run depth.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bm25Params {
    /// Term-frequency saturation; must be >= 0.
    pub k1: f64,
    /// Document-length normalization in [0, 1].
    pub b: f64,
    /// Documents kept per query; must be >= 1.
    pub top_k: usize,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params {
            k1: 1.5,
            b: 0.75,
            top_k: 100,
        }
    }
}

impl Bm25Params {
    pub fn validate(&self) -> Result<(), RankError> {
        if self.k1.is_nan() || self.k1 < 0.0 {
            return Err(RankError::Config(format!("k1 must be >= 0, got {}", self.k1)));
        }
        if !(0.0..=1.0).contains(&self.b) {
            return Err(RankError::Config(format!("b must be in [0, 1], got {}", self.b)));
        }
        if self.top_k == 0 {
            return Err(RankError::Config("top_k must be >= 1".to_string()));
        }
        Ok(())
    }
}

/// One line of a run: a document ranked for a query. Within a query, ranks
/// are consecutive from 1 and scores are non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub query_id: String,
    pub doc_id: String,
    pub rank: u32,
    pub score: f64,
}

/// Ranking output: entries in query order, plus the ids of queries that
/// analyzed to zero tokens (they get no entries and deserve a warning).
#[derive(Debug, Clone, Default)]
pub struct RankOutcome {
    pub entries: Vec<RunEntry>,
    pub empty_queries: Vec<String>,
}

#[derive(Debug, Error)]
pub enum RankError {
    #[error("cannot rank against an empty index")]
    EmptyIndex,
    #[error("invalid parameters: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("run file line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Natural-log idf: ln((|C| + 1) / df_t), and ln(|C| + 1) for unseen terms
/// (df _t = 0). df_t <= |C| keeps this strictly positive. The log base only
/// scales every score uniformly, so rankings are base-invariant.
pub fn idf(index: &InvertedIndex, term: &str) -> Result<f64, RankError> {
    if index.doc_count() == 0 {
        return Err(RankError::EmptyIndex);
    }
    let n = index.doc_count() as f64;
    let df = index.document_frequency(term);
    if df == 0 {
        Ok((n + 1.0).ln())
    } else {
        Ok(((n + 1.0) / df as f64).ln())
    }
}

/// Length-normalized term-frequency factor.
fn tf_factor(tf: u32, doc_len: u32, avgdl: f64, params: &Bm25Params) -> f64 {
    let tf = tf as f64;
    let norm = params.k1 * (1.0 - params.b + params.b * doc_len as f64 / avgdl);
    tf * (params.k1 + 1.0) / (tf + norm)
}

/// Score one document against analyzed query tokens, summing over the query
/// token multiset (duplicates contribute once per occurrence).
pub fn bm25_score(
    index: &InvertedIndex,
    params: &Bm25Params,
    query_tokens: &[String],
    ordinal: u32,
) -> Result<f64, RankError> {
    if index.doc_count() == 0 {
        return Err(RankError::EmptyIndex);
    }
    let avgdl = index.avgdl();
    let doc_len = index.doc(ordinal).length;
    let mut score = 0.0;
    for token in query_tokens {
        let tf = index.term_frequency(token, ordinal);
        if tf == 0 {
            continue;
        }
        score += idf(index, token)? * tf_factor(tf, doc_len, avgdl, params);
    }
    Ok(score)
}

/// Collapse query tokens into (term, multiplicity) pairs in first-occurrence
/// order. Score accumulation follows this order, which keeps runs
/// byte-reproducible.
fn term_multiplicities(tokens: &[String]) -> Vec<(&str, u32)> {
    let mut order: Vec<(&str, u32)> = Vec::new();
    for token in tokens {
        match order.iter_mut().find(|(t, _)| t == token) {
            Some((_, count)) => *count += 1,
            None => order.push((token, 1)),
        }
    }
    order
}

/// Rank every query against the index and keep the top-k documents each.
///
/// Term-at-a-time accumulation over the postings of the query's unique
/// terms; ties in score break by ascending doc_id (byte order), so output
/// is fully deterministic. Queries analyze through the same chain as
/// documents. Queries are independent and run in parallel; entries come
/// back in query order.
pub fn rank_topk(
    index: &InvertedIndex,
    params: &Bm25Params,
    queries: &[(String, String)],
    stopwords: &StopwordSet,
) -> Result<RankOutcome, RankError> {
    params.validate()?;
    if index.doc_count() == 0 {
        return Err(RankError::EmptyIndex);
    }

    let per_query: Vec<(Vec<RunEntry>, Option<String>)> = queries
        .par_iter()
        .map(|(query_id, text)| {
            let tokens = analyze_for_search(&clean_text(text, true), stopwords);
            if tokens.is_empty() {
                return (Vec::new(), Some(query_id.clone()));
            }
            let ranked = rank_one(index, params, &tokens);
            let entries = ranked
                .into_iter()
                .enumerate()
                .map(|(i, (ordinal, score))| RunEntry {
                    query_id: query_id.clone(),
                    doc_id: index.doc(ordinal).doc_id.clone(),
                    rank: i as u32 + 1,
                    score,
                })
                .collect();
            (entries, None)
        })
        .collect();

    let mut outcome = RankOutcome::default();
    for (entries, empty) in per_query {
        outcome.entries.extend(entries);
        outcome.empty_queries.extend(empty);
    }
    Ok(outcome)
}

/// Score all matching documents for one analyzed query and return the top-k
/// (ordinal, score) pairs in final rank order.
fn rank_one(index: &InvertedIndex, params: &Bm25Params, tokens: &[String]) -> Vec<(u32, f64)> {
    let avgdl = index.avgdl();
    let n = index.doc_count() as f64;
    let mut scores: HashMap<u32, f64> = HashMap::new();

    for (term, multiplicity) in term_multiplicities(tokens) {
        let Some(postings) = index.postings(term) else {
            continue;
        };
        let idf = ((n + 1.0) / postings.len() as f64).ln();
        let weight = idf * f64::from(multiplicity);
        for p in postings {
            let doc_len = index.doc(p.ordinal).length;
            *scores.entry(p.ordinal).or_insert(0.0) +=
                weight * tf_factor(p.tf, doc_len, avgdl, params);
        }
    }

    let mut ranked: Vec<(u32, f64)> = scores.into_iter().collect();
    let by_rank = |a: &(u32, f64), b: &(u32, f64)| -> Ordering {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| index.doc(a.0).doc_id.cmp(&index.doc(b.0).doc_id))
    };
    if ranked.len() > params.top_k {
        ranked.select_nth_unstable_by(params.top_k - 1, by_rank);
        ranked.truncate(params.top_k);
    }
    ranked.sort_by(by_rank);
    ranked
}
