//! Immutable inverted index holding everything BM25 needs: per-term
//! postings with term frequencies, document lengths, and collection
//! statistics.

mod codec;
mod store;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::dataset::Document;
use crate::textproc::{analyze_for_search, StopwordSet};
use crate::util::ContentDigest;

pub use store::{load_index, persist_index, FORMAT_VERSION};

/// Documents analyzed per parallel batch during the build.
const BATCH: usize = 1024;

/// One postings entry: a document (by ordinal) and the term's frequency in
/// it. Postings lists are sorted by ordinal with no duplicates, and every
/// stored tf is at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub ordinal: u32,
    pub tf: u32,
}

/// Per-document entry: external id and analyzed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocEntry {
    pub doc_id: String,
    pub length: u32,
}

/// The inverted index. Build it once (or load it), then share freely:
/// everything is read-only afterwards.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    postings: HashMap<String, Vec<Posting>>,
    doc_table: Vec<DocEntry>,
    total_tokens: u64,
    content_digest: String,
}

impl InvertedIndex {
    pub fn doc_count(&self) -> usize {
        self.doc_table.len()
    }

    /// Mean analyzed document length; 0 for an empty collection.
    pub fn avgdl(&self) -> f64 {
        if self.doc_table.is_empty() {
            0.0
        } else {
            self.total_tokens as f64 / self.doc_table.len() as f64
        }
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    /// Number of documents containing `term`; 0 for unknown terms.
    pub fn document_frequency(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    pub fn postings(&self, term: &str) -> Option<&[Posting]> {
        self.postings.get(term).map(Vec::as_slice)
    }

    /// Frequency of `term` in the document at `ordinal`; 0 when absent.
    pub fn term_frequency(&self, term: &str, ordinal: u32) -> u32 {
        self.postings(term).map_or(0, |list| {
            list.binary_search_by_key(&ordinal, |p| p.ordinal)
                .map(|i| list[i].tf)
                .unwrap_or(0)
        })
    }

    pub fn doc(&self, ordinal: u32) -> &DocEntry {
        &self.doc_table[ordinal as usize]
    }

    pub fn docs(&self) -> &[DocEntry] {
        &self.doc_table
    }

    pub fn term_count(&self) -> usize {
        self.postings.len()
    }

    /// SHA-256 over the (doc_id, text) pairs the index was built from.
    pub fn content_digest(&self) -> &str {
        &self.content_digest
    }

    /// (term, df, total tf) rows sorted by term, for inspection dumps.
    pub fn term_stats(&self) -> Vec<(String, usize, u64)> {
        let mut rows: Vec<(String, usize, u64)> = self
            .postings
            .iter()
            .map(|(term, list)| {
                (
                    term.clone(),
                    list.len(),
                    list.iter().map(|p| u64::from(p.tf)).sum(),
                )
            })
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows
    }
}

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("duplicate document id {0:?}")]
    DuplicateDocId(String),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("index format version {found} not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("corrupt index file: {0}")]
    Corrupt(String),
}

/// Build an index over a document collection. Each document runs through
/// the search-time analysis chain (stopword removal + stemming); analysis
/// is parallel per batch, the merge is single-writer in input order, so the
/// result is deterministic for a given input order. A duplicate doc_id is
/// fatal.
pub fn build_index<I>(documents: I, stopwords: &StopwordSet) -> Result<InvertedIndex, IndexError>
where
    I: IntoIterator<Item = Document>,
{
    let mut index = InvertedIndex {
        postings: HashMap::new(),
        doc_table: Vec::new(),
        total_tokens: 0,
        content_digest: String::new(),
    };
    let mut seen: HashSet<String> = HashSet::new();
    let mut digest = ContentDigest::new();

    let mut iter = documents.into_iter();
    let mut batch: Vec<Document> = Vec::with_capacity(BATCH);
    loop {
        batch.clear();
        batch.extend(iter.by_ref().take(BATCH));
        if batch.is_empty() {
            break;
        }
        // (doc_id, per-term counts, token count) per document
        let analyzed: Vec<(String, HashMap<String, u32>, u32)> = batch
            .par_iter()
            .map(|doc| {
                let tokens = analyze_for_search(&doc.text, stopwords);
                let mut counts: HashMap<String, u32> = HashMap::new();
                let total = tokens.len() as u32;
                for token in tokens {
                    *counts.entry(token).or_insert(0) += 1;
                }
                (doc.doc_id.clone(), counts, total)
            })
            .collect();

        for (pos, (doc_id, counts, total)) in analyzed.into_iter().enumerate() {
            if !seen.insert(doc_id.clone()) {
                return Err(IndexError::DuplicateDocId(doc_id));
            }
            digest.update(doc_id.as_bytes());
            digest.update(&[0]);
            digest.update(batch[pos].text.as_str().as_bytes());
            digest.update(b"\n");

            let ordinal = index.doc_table.len() as u32;
            index.doc_table.push(DocEntry {
                doc_id,
                length: total,
            });
            index.total_tokens += u64::from(total);
            for (term, tf) in counts {
                let posting = Posting { ordinal, tf };
                match index.postings.get_mut(&term) {
                    Some(list) => list.push(posting),
                    None => {
                        index.postings.insert(term, vec![posting]);
                    }
                }
            }
        }
    }

    index.content_digest = digest.finish();
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::clean_text;

    fn doc(id: &str, text: &str) -> Document {
        Document {
            doc_id: id.to_string(),
            text: clean_text(text, true),
        }
    }

    #[test]
    fn micro_fixture_statistics() {
        let sw = StopwordSet::english();
        let index = build_index(vec![doc("d1", "autism disorder"), doc("d2", "autism")], &sw).unwrap();
        assert_eq!(index.doc_count(), 2);
        assert!((index.avgdl() - 1.5).abs() < 1e-12);
        assert_eq!(index.document_frequency("autism"), 2);
        assert_eq!(index.document_frequency("disord"), 1);
        assert_eq!(index.document_frequency("unknown"), 0);
        let autism: Vec<(u32, u32)> = index
            .postings("autism")
            .unwrap()
            .iter()
            .map(|p| (p.ordinal, p.tf))
            .collect();
        assert_eq!(autism, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn empty_collection_is_a_valid_index() {
        let sw = StopwordSet::english();
        let index = build_index(Vec::new(), &sw).unwrap();
        assert_eq!(index.doc_count(), 0);
        assert_eq!(index.avgdl(), 0.0);
        assert_eq!(index.term_count(), 0);
    }

    #[test]
    fn repeated_term_counts_tf() {
        let sw = StopwordSet::english();
        let index = build_index(vec![doc("d1", "ant ant ant")], &sw).unwrap();
        assert_eq!(index.term_frequency("ant", 0), 3);
        assert_eq!(index.doc(0).length, 3);
    }

    #[test]
    fn duplicate_doc_id_is_fatal() {
        let sw = StopwordSet::english();
        let result = build_index(vec![doc("d1", "a b"), doc("d1", "c d")], &sw);
        assert!(matches!(result, Err(IndexError::DuplicateDocId(id)) if id == "d1"));
    }

    #[test]
    fn token_conservation() {
        let sw = StopwordSet::english();
        let index = build_index(
            vec![doc("d1", "alpha beta gamma alpha"), doc("d2", "beta delta")],
            &sw,
        )
        .unwrap();
        let posting_total: u64 = index
            .term_stats()
            .iter()
            .map(|(_, _, total_tf)| total_tf)
            .sum();
        let length_total: u64 = index.docs().iter().map(|d| u64::from(d.length)).sum();
        assert_eq!(posting_total, length_total);
        assert_eq!(index.total_tokens(), length_total);
    }

    #[test]
    fn stopwords_never_reach_the_index() {
        let sw = StopwordSet::english();
        let index = build_index(vec![doc("d1", "the cat and the hat")], &sw).unwrap();
        assert_eq!(index.document_frequency("the"), 0);
        assert_eq!(index.document_frequency("and"), 0);
        assert_eq!(index.doc(0).length, 2);
    }

    #[test]
    fn no_unstemmed_variants_reach_the_index() {
        let sw = StopwordSet::english();
        let raw = "developmental disorders characterized by troubles communication";
        let index = build_index(vec![doc("d1", raw)], &sw).unwrap();
        for token in raw.split(' ') {
            if sw.contains(token) {
                continue;
            }
            let stem = crate::textproc::porter_stem(token);
            assert!(index.document_frequency(&stem) > 0, "missing stem {stem:?}");
            if stem != token {
                assert_eq!(index.document_frequency(token), 0, "unstemmed {token:?} indexed");
            }
        }
    }
}
