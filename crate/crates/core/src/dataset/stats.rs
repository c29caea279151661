//! Summary statistics over a built bundle.

use serde::Serialize;

use super::DatasetBundle;
use crate::textproc::tokenize;

/// The five headline numbers of a dataset: how many documents and queries
/// there are, how long they run, and how many relevant documents the
/// average query has.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetStats {
    pub document_count: u64,
    pub avg_document_tokens: f64,
    pub query_count: u64,
    pub avg_query_tokens: f64,
    pub avg_relevant_per_query: f64,
}

impl DatasetStats {
    pub fn render(&self) -> String {
        format!(
            "Document count           {}\n\
             Average document length  {:.2}\n\
             Query count              {}\n\
             Average query length     {:.2}\n\
             Avg rel. docs per query  {:.2}\n",
            self.document_count,
            self.avg_document_tokens,
            self.query_count,
            self.avg_query_tokens,
            self.avg_relevant_per_query
        )
    }
}

/// Compute stats for a bundle. Query statistics cover all three splits.
pub fn dataset_stats(bundle: &DatasetBundle) -> DatasetStats {
    let document_count = bundle.documents.len() as u64;
    let doc_tokens: u64 = bundle
        .documents
        .iter()
        .map(|d| tokenize(&d.text).len() as u64)
        .sum();
    let query_count = bundle.queries.total() as u64;
    let query_tokens: u64 = bundle
        .queries
        .iter_all()
        .map(|q| tokenize(&q.text).len() as u64)
        .sum();
    let qrel_count = bundle.qrels.total() as u64;

    let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    DatasetStats {
        document_count,
        avg_document_tokens: ratio(doc_tokens, document_count),
        query_count,
        avg_query_tokens: ratio(query_tokens, query_count),
        avg_relevant_per_query: ratio(qrel_count, query_count),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{BuildManifest, Document, PerSplit, Query, QueryMode, RelevanceJudgment};
    use super::*;
    use crate::dataset::{BuildConfig, SplitCounts};
    use crate::textproc::clean_text;

    fn empty_manifest() -> BuildManifest {
        BuildManifest {
            config: BuildConfig::default(),
            input_digest: String::new(),
            articles_ingested: 0,
            documents: 0,
            queries: SplitCounts::default(),
            qrels: SplitCounts::default(),
            exclusions: Default::default(),
        }
    }

    #[test]
    fn empty_bundle_reports_zeros() {
        let bundle = DatasetBundle {
            documents: vec![],
            queries: PerSplit::default(),
            qrels: PerSplit::default(),
            manifest: empty_manifest(),
        };
        let stats = dataset_stats(&bundle);
        assert_eq!(stats.document_count, 0);
        assert_eq!(stats.avg_document_tokens, 0.0);
        assert_eq!(stats.avg_relevant_per_query, 0.0);
    }

    #[test]
    fn averages_match_hand_counts() {
        let q = |id: &str, text: &str| Query {
            query_id: id.into(),
            text: clean_text(text, true),
            source_mode: QueryMode::Title,
        };
        let j = |qid: &str, did: &str, grade: u8| RelevanceJudgment {
            query_id: qid.into(),
            doc_id: did.into(),
            grade,
        };
        let bundle = DatasetBundle {
            documents: vec![
                Document { doc_id: "a".into(), text: clean_text("one two three four", true) },
                Document { doc_id: "b".into(), text: clean_text("five six", true) },
            ],
            queries: PerSplit {
                train: vec![q("a", "autism"), q("b", "developmental disorder")],
                validation: vec![],
                test: vec![],
            },
            qrels: PerSplit {
                train: vec![j("a", "a", 2), j("b", "b", 2), j("b", "a", 1)],
                validation: vec![],
                test: vec![],
            },
            manifest: empty_manifest(),
        };
        let stats = dataset_stats(&bundle);
        assert_eq!(stats.document_count, 2);
        assert!((stats.avg_document_tokens - 3.0).abs() < 1e-12);
        assert_eq!(stats.query_count, 2);
        assert!((stats.avg_query_tokens - 1.5).abs() < 1e-12);
        assert!((stats.avg_relevant_per_query - 1.5).abs() < 1e-12);
    }
}
