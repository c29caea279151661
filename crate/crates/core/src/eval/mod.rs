//! Evaluation of run files against qrels: P@k, nDCG@k, nDCG, MAP per query
//! and averaged, two-tailed paired t-tests with Bonferroni correction, and
//! LaTeX result tables with significance markers.

mod metrics;
mod table;
mod ttest;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::bm25::RunEntry;
use crate::dataset::RelevanceJudgment;

pub use metrics::{average_precision, ndcg_at_k, precision_at_k, Metric, METRICS, METRIC_COUNT};
pub use table::{compare_to_baseline, latex_table, LatexTable, Marker, SignificanceVerdict, SystemEval};
pub use ttest::{bonferroni, paired_ttest, PairedTTest};

/// Relevance judgments grouped by query. Grade 0 is implicit: anything not
/// judged is non-relevant.
#[derive(Debug, Clone, Default)]
pub struct Qrels {
    by_query: BTreeMap<String, HashMap<String, u8>>,
}

impl Qrels {
    pub fn from_judgments<'a, I>(judgments: I) -> Self
    where
        I: IntoIterator<Item = &'a RelevanceJudgment>,
    {
        let mut by_query: BTreeMap<String, HashMap<String, u8>> = BTreeMap::new();
        for j in judgments {
            by_query
                .entry(j.query_id.clone())
                .or_default()
                .insert(j.doc_id.clone(), j.grade);
        }
        Qrels { by_query }
    }

    pub fn query_count(&self) -> usize {
        self.by_query.len()
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.by_query.keys().map(String::as_str)
    }

    pub fn contains_query(&self, query_id: &str) -> bool {
        self.by_query.contains_key(query_id)
    }

    /// doc_id -> grade for one query.
    pub fn grades(&self, query_id: &str) -> Option<&HashMap<String, u8>> {
        self.by_query.get(query_id)
    }
}

/// Per-query metric values, indexed like [`METRICS`].
#[derive(Debug, Clone, PartialEq)]
pub struct QueryMetrics {
    pub query_id: String,
    pub values: [f64; METRIC_COUNT],
}

/// Evaluation of one run: per-query rows (sorted by query id) and the mean
/// of each metric over all judged queries.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub per_query: Vec<QueryMetrics>,
    pub means: [f64; METRIC_COUNT],
}

impl Evaluation {
    pub fn mean(&self, metric: Metric) -> f64 {
        self.means[Metric::index_of(metric)]
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("run references unknown query id {0:?}")]
    UnknownQuery(String),
    #[error("evaluations do not cover the same query set")]
    MismatchedQueries,
    #[error("paired test needs at least 2 observations, got {0}")]
    TooFewObservations(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Evaluate a run against qrels. Every judged query contributes a row:
/// queries the run never answered score zero on every metric. A run entry
/// whose query id is not in the qrels is fatal.
pub fn evaluate_run(run: &[RunEntry], qrels: &Qrels) -> Result<Evaluation, EvalError> {
    // Group the run by query, preserving rank order.
    let mut by_query: HashMap<&str, Vec<(u32, &str)>> = HashMap::new();
    for entry in run {
        if !qrels.contains_query(&entry.query_id) {
            return Err(EvalError::UnknownQuery(entry.query_id.clone()));
        }
        by_query
            .entry(entry.query_id.as_str())
            .or_default()
            .push((entry.rank, entry.doc_id.as_str()));
    }
    for ranked in by_query.values_mut() {
        ranked.sort_by_key(|(rank, _)| *rank);
    }

    let empty: Vec<(u32, &str)> = Vec::new();
    let per_query: Vec<QueryMetrics> = qrels
        .by_query
        .par_iter()
        .map(|(query_id, grades)| {
            let ranked: Vec<&str> = by_query
                .get(query_id.as_str())
                .unwrap_or(&empty)
                .iter()
                .map(|(_, doc)| *doc)
                .collect();
            let mut values = [0.0; METRIC_COUNT];
            for (i, metric) in METRICS.iter().enumerate() {
                values[i] = metric.compute(&ranked, grades);
            }
            QueryMetrics {
                query_id: query_id.clone(),
                values,
            }
        })
        .collect();

    let mut means = [0.0; METRIC_COUNT];
    if !per_query.is_empty() {
        for row in &per_query {
            for (m, v) in means.iter_mut().zip(row.values.iter()) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= per_query.len() as f64;
        }
    }
    Ok(Evaluation { per_query, means })
}
