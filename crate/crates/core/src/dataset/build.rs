//! Dataset construction operations and the end-to-end builder.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use rayon::prelude::*;

use super::graph::{add_edges, TitleMap, TopicLinkGraph};
use super::{
    split_queries, BuildConfig, BuildManifest, DatasetBundle, DatasetError, Document,
    ExclusionCounts, PerSplit, Query, QueryMode, RelevanceJudgment, SplitCounts,
};
use crate::corpus::{
    first_sentence, ArticleRecord, CorpusError, FirstSentence, IngestSummary, RecordStream,
};
use crate::corpus::sentence::first_sentence_end;
use crate::textproc::{clean_text, tokenize};
use crate::util::{compare_ids, sha256_file, ContentDigest};

/// Records processed per parallel cleaning batch.
const BATCH: usize = 1024;

/// A record collection the builder can stream more than once (documents and
/// the link graph are built in separate passes so full article text never
/// has to sit in memory).
pub trait RecordSource {
    /// Stream every valid record, in input order, into `visit`.
    fn for_each_record(
        &self,
        visit: &mut dyn FnMut(ArticleRecord),
    ) -> Result<IngestSummary, CorpusError>;

    /// Content digest of the input, recorded in the build manifest.
    fn digest(&self) -> Result<String, CorpusError>;
}

/// Stream records from a JSON-lines file, re-opening it per pass.
pub struct JsonlFileSource {
    path: PathBuf,
}

impl JsonlFileSource {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        JsonlFileSource { path: path.into() }
    }
}

impl RecordSource for JsonlFileSource {
    fn for_each_record(
        &self,
        visit: &mut dyn FnMut(ArticleRecord),
    ) -> Result<IngestSummary, CorpusError> {
        let reader = BufReader::new(File::open(&self.path).map_err(CorpusError::Io)?);
        let mut stream = RecordStream::new(reader);
        for record in stream.by_ref() {
            visit(record?);
        }
        Ok(stream.into_summary())
    }

    fn digest(&self) -> Result<String, CorpusError> {
        sha256_file(&self.path).map_err(CorpusError::Io)
    }
}

/// In-memory record collection, mostly for tests and small corpora.
pub struct MemorySource {
    records: Vec<ArticleRecord>,
}

impl MemorySource {
    pub fn new(records: Vec<ArticleRecord>) -> Self {
        MemorySource { records }
    }
}

impl RecordSource for MemorySource {
    fn for_each_record(
        &self,
        visit: &mut dyn FnMut(ArticleRecord),
    ) -> Result<IngestSummary, CorpusError> {
        for record in &self.records {
            visit(record.clone());
        }
        Ok(IngestSummary {
            lines_read: self.records.len() as u64,
            records_ok: self.records.len() as u64,
            ..IngestSummary::default()
        })
    }

    fn digest(&self) -> Result<String, CorpusError> {
        let mut digest = ContentDigest::new();
        for record in &self.records {
            digest.update(&serde_json::to_vec(record).expect("record serializes"));
            digest.update(b"\n");
        }
        Ok(digest.finish())
    }
}

/// Clean one article body into document text: drop the title line (already
/// absent from [`ArticleRecord::body`]) and the first sentence, then clean.
fn document_text(record: &ArticleRecord, lowercase: bool) -> crate::textproc::CleanText {
    let body = record.body();
    let cut = if body.is_empty() { 0 } else { first_sentence_end(body) };
    clean_text(&body[cut..], lowercase)
}

/// Build the document collection: per record, drop the title line and first
/// sentence, clean, and keep bodies with at least `min_doc_tokens` tokens.
/// Returns the documents plus the number excluded as too short.
pub fn build_documents<I>(records: I, min_doc_tokens: usize, lowercase: bool) -> (Vec<Document>, u64)
where
    I: IntoIterator<Item = ArticleRecord>,
{
    let mut documents = Vec::new();
    let mut short = 0u64;
    let mut batch: Vec<ArticleRecord> = Vec::with_capacity(BATCH);
    let mut iter = records.into_iter();
    loop {
        batch.clear();
        batch.extend(iter.by_ref().take(BATCH));
        if batch.is_empty() {
            break;
        }
        let cleaned: Vec<Option<Document>> = batch
            .par_iter()
            .map(|record| {
                let text = document_text(record, lowercase);
                if tokenize(&text).len() >= min_doc_tokens && !text.is_empty() {
                    Some(Document {
                        doc_id: record.id.clone(),
                        text,
                    })
                } else {
                    None
                }
            })
            .collect();
        for item in cleaned {
            match item {
                Some(doc) => documents.push(doc),
                None => short += 1,
            }
        }
    }
    (documents, short)
}

/// Per-article query material gathered in the metadata pass.
struct QueryCandidate {
    id: String,
    text: crate::textproc::CleanText,
}

fn query_candidate(
    id: &str,
    title: &str,
    fs: Option<&FirstSentence>,
    mode: QueryMode,
    lowercase: bool,
) -> QueryCandidate {
    let raw = match mode {
        QueryMode::Title => title,
        QueryMode::FirstSentence => fs.map(|f| f.text.as_str()).unwrap_or(""),
    };
    QueryCandidate {
        id: id.to_string(),
        text: clean_text(raw, lowercase),
    }
}

/// Turn candidates into the query collection: drop empty texts, texts over
/// `max_query_words`, and duplicate texts (lowest article id wins). Output
/// is sorted by id. Returns (queries, empty, too_long, duplicates).
fn finalize_queries(
    candidates: Vec<QueryCandidate>,
    mode: QueryMode,
    max_query_words: usize,
) -> (Vec<Query>, u64, u64, u64) {
    let mut empty = 0u64;
    let mut too_long = 0u64;
    let mut duplicates = 0u64;
    // text -> lowest id holding it
    let mut by_text: HashMap<String, usize> = HashMap::new();
    let mut kept: Vec<Query> = Vec::new();
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| compare_ids(&candidates[a].id, &candidates[b].id));

    for idx in order {
        let cand = &candidates[idx];
        if cand.text.is_empty() {
            empty += 1;
            continue;
        }
        if tokenize(&cand.text).len() > max_query_words {
            too_long += 1;
            continue;
        }
        if by_text.contains_key(cand.text.as_str()) {
            duplicates += 1;
            continue;
        }
        by_text.insert(cand.text.as_str().to_string(), idx);
        kept.push(Query {
            query_id: cand.id.clone(),
            text: cand.text.clone(),
            source_mode: mode,
        });
    }
    (kept, empty, too_long, duplicates)
}

/// Build queries from records in the requested mode. Queries exceeding
/// `max_query_words` or empty after cleaning are excluded; duplicate texts
/// keep the lowest article id.
pub fn build_queries<I>(
    records: I,
    mode: QueryMode,
    max_query_words: usize,
    lowercase: bool,
) -> Vec<Query>
where
    I: IntoIterator<Item = ArticleRecord>,
{
    let candidates: Vec<QueryCandidate> = records
        .into_iter()
        .map(|record| {
            let fs = first_sentence(&record).ok();
            query_candidate(&record.id, &record.title, fs.as_ref(), mode, lowercase)
        })
        .collect();
    finalize_queries(candidates, mode, max_query_words).0
}

/// Build positive judgments: grade 2 for (q, d) built from the same article
/// when both survived filtering, grade 1 when document `d`'s article links
/// to query `q`'s article from its first sentence. Grade 0 is implicit.
/// Output is sorted by (query id, doc id).
pub fn build_qrels(
    queries: &[Query],
    documents: &[Document],
    graph: &TopicLinkGraph,
) -> Vec<RelevanceJudgment> {
    let query_ids: HashSet<&str> = queries.iter().map(|q| q.query_id.as_str()).collect();
    let doc_ids: HashSet<&str> = documents.iter().map(|d| d.doc_id.as_str()).collect();

    let mut qrels = Vec::new();
    for q in &query_ids {
        if doc_ids.contains(q) {
            qrels.push(RelevanceJudgment {
                query_id: q.to_string(),
                doc_id: q.to_string(),
                grade: 2,
            });
        }
    }
    for (source, target) in graph.edges() {
        if source != target && query_ids.contains(target) && doc_ids.contains(source) {
            qrels.push(RelevanceJudgment {
                query_id: target.to_string(),
                doc_id: source.to_string(),
                grade: 1,
            });
        }
    }
    qrels.sort_by(|a, b| {
        compare_ids(&a.query_id, &b.query_id).then_with(|| compare_ids(&a.doc_id, &b.doc_id))
    });
    qrels
}

/// Keep queries with a surviving grade-2 self-document and at least
/// `min_rel_docs` relevant documents (grade >= 1; the self-document
/// counts). Judgments of dropped queries are dropped with them. Returns
/// (queries, qrels, missing_self, below_min).
pub fn select_queries(
    queries: Vec<Query>,
    qrels: Vec<RelevanceJudgment>,
    min_rel_docs: usize,
) -> (Vec<Query>, Vec<RelevanceJudgment>, u64, u64) {
    let mut relevant: HashMap<&str, usize> = HashMap::new();
    let mut has_self: HashSet<&str> = HashSet::new();
    for j in &qrels {
        *relevant.entry(j.query_id.as_str()).or_default() += 1;
        if j.grade == 2 {
            has_self.insert(j.query_id.as_str());
        }
    }

    let mut missing_self = 0u64;
    let mut below_min = 0u64;
    let mut keep: HashSet<String> = HashSet::new();
    for q in &queries {
        let id = q.query_id.as_str();
        if !has_self.contains(id) {
            missing_self += 1;
        } else if relevant.get(id).copied().unwrap_or(0) < min_rel_docs {
            below_min += 1;
        } else {
            keep.insert(id.to_string());
        }
    }

    let queries = queries
        .into_iter()
        .filter(|q| keep.contains(&q.query_id))
        .collect();
    let qrels = qrels
        .into_iter()
        .filter(|j| keep.contains(&j.query_id))
        .collect();
    (queries, qrels, missing_self, below_min)
}

/// Run the whole construction pipeline over a record source.
///
/// Two streaming passes: the first gathers titles, first sentences and
/// link targets (small per-article metadata); the second cleans document
/// bodies. Output is deterministic for a given input, configuration and
/// seed, byte for byte.
pub fn build_dataset<S: RecordSource>(
    source: &S,
    config: &BuildConfig,
) -> Result<DatasetBundle, DatasetError> {
    config.fractions.validate()?;
    let mut exclusions = ExclusionCounts::default();

    // Pass 1: per-article metadata.
    struct Meta {
        id: String,
        title: String,
        fs: Option<FirstSentence>,
    }
    let mut metas: Vec<Meta> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut duplicate_ids = 0u64;
    let summary = source.for_each_record(&mut |record| {
        if !seen.insert(record.id.clone()) {
            duplicate_ids += 1;
            return;
        }
        metas.push(Meta {
            fs: first_sentence(&record).ok(),
            id: record.id,
            title: record.title,
        });
    })?;
    exclusions.invalid_records = summary.records_skipped;
    exclusions.duplicate_ids = duplicate_ids;
    let articles_ingested = metas.len() as u64;

    // Title resolution and the link graph.
    let titles = TitleMap::build(metas.iter().map(|m| (m.id.as_str(), m.title.as_str())));
    let mut graph = TopicLinkGraph {
        duplicate_titles: titles.duplicate_titles,
        ..TopicLinkGraph::default()
    };
    for meta in &metas {
        if let Some(fs) = &meta.fs {
            add_edges(&mut graph, &titles, &meta.id, fs.anchors.iter().map(|a| a.target.as_str()));
        }
    }
    exclusions.duplicate_titles = graph.duplicate_titles;
    exclusions.unresolved_link_targets = graph.unresolved_targets;

    // Queries from pass-1 metadata.
    let candidates: Vec<QueryCandidate> = metas
        .iter()
        .map(|m| query_candidate(&m.id, &m.title, m.fs.as_ref(), config.query_mode, config.lowercase))
        .collect();
    drop(metas);
    let (queries, empty, too_long, duplicates) =
        finalize_queries(candidates, config.query_mode, config.max_query_words);
    exclusions.empty_queries = empty;
    exclusions.long_queries = too_long;
    exclusions.duplicate_query_texts = duplicates;

    // Pass 2: documents.
    let mut documents: Vec<Document> = Vec::new();
    let mut short = 0u64;
    let mut seen2: HashSet<String> = HashSet::new();
    let mut batch: Vec<ArticleRecord> = Vec::with_capacity(BATCH);
    let min_doc_tokens = config.min_doc_tokens;
    let lowercase = config.lowercase;
    let flush = |batch: &mut Vec<ArticleRecord>,
                 documents: &mut Vec<Document>,
                 short: &mut u64| {
        let cleaned: Vec<Option<Document>> = batch
            .par_iter()
            .map(|record| {
                let text = document_text(record, lowercase);
                if tokenize(&text).len() >= min_doc_tokens && !text.is_empty() {
                    Some(Document {
                        doc_id: record.id.clone(),
                        text,
                    })
                } else {
                    None
                }
            })
            .collect();
        for item in cleaned {
            match item {
                Some(doc) => documents.push(doc),
                None => *short += 1,
            }
        }
        batch.clear();
    };
    source.for_each_record(&mut |record| {
        if !seen2.insert(record.id.clone()) {
            return;
        }
        batch.push(record);
        if batch.len() >= BATCH {
            flush(&mut batch, &mut documents, &mut short);
        }
    })?;
    flush(&mut batch, &mut documents, &mut short);
    exclusions.short_documents = short;

    // Judgments, selection, split.
    let qrels = build_qrels(&queries, &documents, &graph);
    let (queries, qrels, missing_self, below_min) =
        select_queries(queries, qrels, config.min_rel_docs);
    exclusions.queries_missing_self_document = missing_self;
    exclusions.queries_below_min_rel = below_min;

    let assignment = split_queries(queries, &config.fractions, config.seed)?;
    let mut split_queries_out = PerSplit {
        train: assignment.train,
        validation: assignment.validation,
        test: assignment.test,
    };
    for part in [
        &mut split_queries_out.train,
        &mut split_queries_out.validation,
        &mut split_queries_out.test,
    ] {
        part.sort_by(|a, b| compare_ids(&a.query_id, &b.query_id));
    }

    let mut split_qrels = PerSplit::<RelevanceJudgment>::default();
    {
        let mut split_of: HashMap<&str, usize> = HashMap::new();
        for (i, part) in split_queries_out.named().iter().enumerate() {
            for q in part.1 {
                split_of.insert(q.query_id.as_str(), i);
            }
        }
        let mut buckets: [Vec<RelevanceJudgment>; 3] = Default::default();
        for j in qrels {
            let slot = split_of[j.query_id.as_str()];
            buckets[slot].push(j);
        }
        [split_qrels.train, split_qrels.validation, split_qrels.test] = buckets;
    }

    let manifest = BuildManifest {
        config: config.clone(),
        input_digest: source.digest()?,
        articles_ingested,
        documents: documents.len() as u64,
        queries: SplitCounts::of(&split_queries_out),
        qrels: SplitCounts::of(&split_qrels),
        exclusions,
    };

    Ok(DatasetBundle {
        documents,
        queries: split_queries_out,
        qrels: split_qrels,
        manifest,
    })
}
