//! Build a tiny dataset in memory, index it, rank its queries with BM25,
//! and evaluate the run. Run with:
//!
//! ```sh
//! cargo run -p wikibench-core --example quickstart
//! ```

use wikibench_core::bm25::{rank_topk, Bm25Params};
use wikibench_core::corpus::ArticleRecord;
use wikibench_core::dataset::{build_dataset, dataset_stats, BuildConfig, MemorySource};
use wikibench_core::eval::{evaluate_run, Metric, Qrels, METRICS};
use wikibench_core::index::build_index;
use wikibench_core::textproc::StopwordSet;

fn article(id: &str, title: &str, body: &str) -> ArticleRecord {
    ArticleRecord {
        id: id.to_string(),
        url: format!("example://{id}"),
        title: title.to_string(),
        text: format!("{title}\n\n{body}"),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = vec![
        article(
            "1",
            "Autism",
            "Autism is a <a href=\"Developmental%20disorder\">developmental disorder</a> \
             with early signs. Autism affects communication and behavior, and signs of \
             autism usually appear in early childhood according to parents and clinicians.",
        ),
        article(
            "2",
            "Developmental disorder",
            "A developmental disorder is a condition beginning in childhood. Developmental \
             disorders comprise a group of psychiatric conditions that involve serious \
             impairment in different areas, including language and learning disorders.",
        ),
        article(
            "3",
            "Language disorder",
            "A language disorder is an impairment related to <a href=\"Developmental%20disorder\">\
             developmental disorders</a> of speech. Language disorders involve the processing \
             of linguistic information, covering grammar, semantics, and other language aspects.",
        ),
    ];

    // documents, queries, qrels and splits
    let config = BuildConfig {
        min_rel_docs: 1,
        fractions: wikibench_core::dataset::SplitFractions {
            train: 1.0,
            validation: 0.0,
            test: 0.0,
        },
        ..BuildConfig::default()
    };
    let bundle = build_dataset(&MemorySource::new(records), &config)?;
    println!("{}", dataset_stats(&bundle).render());
    for j in bundle.qrels.iter_all() {
        println!("qrel: {} -> {} (grade {})", j.query_id, j.doc_id, j.grade);
    }

    // index and rank
    let stopwords = StopwordSet::english();
    let index = build_index(bundle.documents.clone(), &stopwords)?;
    let queries: Vec<(String, String)> = bundle
        .queries
        .iter_all()
        .map(|q| (q.query_id.clone(), q.text.as_str().to_string()))
        .collect();
    let outcome = rank_topk(&index, &Bm25Params::default(), &queries, &stopwords)?;
    println!();
    for entry in &outcome.entries {
        println!(
            "run: {} Q0 {} {} {:.6}",
            entry.query_id, entry.doc_id, entry.rank, entry.score
        );
    }

    // evaluate
    let qrels = Qrels::from_judgments(bundle.qrels.iter_all());
    let evaluation = evaluate_run(&outcome.entries, &qrels)?;
    println!();
    for (i, metric) in METRICS.iter().enumerate() {
        println!("{:8} {:.4}", metric.label(), evaluation.means[i]);
    }
    println!("\nMAP over {} queries: {:.4}", qrels.query_count(), evaluation.mean(Metric::Map));
    Ok(())
}
