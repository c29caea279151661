//! `wikibench stats`: headline numbers for a built dataset directory.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use wikibench_core::dataset::{read_documents_csv, read_qrels_file, read_queries_csv};

#[derive(Args)]
pub struct StatsArgs {
    /// Dataset directory produced by `build`.
    #[arg(long)]
    bundle: PathBuf,
}

pub fn run(args: StatsArgs) -> Result<()> {
    let dir = &args.bundle;
    let documents = read_documents_csv(&dir.join("documents.csv"))
        .with_context(|| format!("reading {}/documents.csv", dir.display()))?;
    let doc_tokens: u64 = documents
        .iter()
        .map(|d| d.text.as_str().split(' ').filter(|t| !t.is_empty()).count() as u64)
        .sum();

    let mut query_count = 0u64;
    let mut query_tokens = 0u64;
    let mut qrel_count = 0u64;
    for split in ["train", "validation", "test"] {
        let queries = read_queries_csv(&dir.join(split).join("queries.csv"))
            .with_context(|| format!("reading {}/{split}/queries.csv", dir.display()))?;
        query_count += queries.len() as u64;
        query_tokens += queries
            .iter()
            .map(|(_, text)| text.split(' ').filter(|t| !t.is_empty()).count() as u64)
            .sum::<u64>();
        qrel_count += read_qrels_file(&dir.join(split).join("qrels.txt"))
            .with_context(|| format!("reading {}/{split}/qrels.txt", dir.display()))?
            .len() as u64;
    }

    let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    print!(
        "Document count           {}\n\
         Average document length  {:.2}\n\
         Query count              {}\n\
         Average query length     {:.2}\n\
         Avg rel. docs per query  {:.2}\n",
        documents.len(),
        ratio(doc_tokens, documents.len() as u64),
        query_count,
        ratio(query_tokens, query_count),
        ratio(qrel_count, query_count),
    );
    Ok(())
}
