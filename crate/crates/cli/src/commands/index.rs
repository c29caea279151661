//! `wikibench index build` / `wikibench index inspect`.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use serde::Serialize;
use wikibench_core::dataset::read_documents_csv;
use wikibench_core::index::{build_index, load_index, persist_index};
use wikibench_core::textproc::StopwordSet;

use super::CommandManifest;

#[derive(Subcommand)]
pub enum IndexCommand {
    /// Build an inverted index from a documents CSV.
    Build(IndexBuildArgs),
    /// Dump per-term statistics of an index as TSV.
    Inspect(IndexInspectArgs),
}

#[derive(Args)]
pub struct IndexBuildArgs {
    /// documents.csv with header id_right,text_right.
    #[arg(long)]
    documents: PathBuf,
    /// Output index file.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
pub struct IndexInspectArgs {
    /// Index file to inspect.
    index: PathBuf,
    /// Print only the first N terms.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Serialize)]
struct IndexParams {
    documents: u64,
    terms: u64,
    total_tokens: u64,
    stopword_digest: String,
    content_digest: String,
}

pub fn run(cmd: IndexCommand) -> Result<()> {
    match cmd {
        IndexCommand::Build(args) => build(args),
        IndexCommand::Inspect(args) => inspect(args),
    }
}

fn build(args: IndexBuildArgs) -> Result<()> {
    let stopwords = StopwordSet::english();
    let documents = read_documents_csv(&args.documents)
        .with_context(|| format!("reading {}", args.documents.display()))?;
    let index = build_index(documents, &stopwords)?;
    persist_index(&index, &args.output)
        .with_context(|| format!("writing index {}", args.output.display()))?;

    let mut manifest = CommandManifest::new(
        "index build",
        IndexParams {
            documents: index.doc_count() as u64,
            terms: index.term_count() as u64,
            total_tokens: index.total_tokens(),
            stopword_digest: stopwords.digest().to_string(),
            content_digest: index.content_digest().to_string(),
        },
    );
    manifest.record_input(&args.documents)?;
    manifest.record_output(&args.output)?;
    manifest.write_next_to(&args.output)?;

    eprintln!(
        "indexed {} documents, {} terms, avgdl {:.2}",
        index.doc_count(),
        index.term_count(),
        index.avgdl()
    );
    Ok(())
}

fn inspect(args: IndexInspectArgs) -> Result<()> {
    let index = load_index(&args.index)
        .with_context(|| format!("loading index {}", args.index.display()))?;
    println!("#docs\t{}", index.doc_count());
    println!("#avgdl\t{:.6}", index.avgdl());
    println!("#total_tokens\t{}", index.total_tokens());
    println!("#digest\t{}", index.content_digest());
    println!("term\tdf\ttotal_tf");
    let stats = index.term_stats();
    let shown = args.limit.unwrap_or(stats.len());
    for (term, df, total_tf) in stats.into_iter().take(shown) {
        println!("{term}\t{df}\t{total_tf}");
    }
    Ok(())
}
