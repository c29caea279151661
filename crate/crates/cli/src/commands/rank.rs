//! `wikibench rank`: BM25 top-k run file for a query set.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use wikibench_core::bm25::{rank_topk, write_run, Bm25Params};
use wikibench_core::dataset::read_queries_csv;
use wikibench_core::index::load_index;
use wikibench_core::textproc::StopwordSet;

use crate::config::PipelineConfig;

use super::CommandManifest;

#[derive(Args)]
pub struct RankArgs {
    /// Index file produced by `index build`.
    #[arg(long)]
    index: PathBuf,
    /// queries.csv with header id_left,text_left.
    #[arg(long)]
    queries: PathBuf,
    /// Output TREC run file.
    #[arg(long)]
    output: PathBuf,
    /// TOML configuration file; flags below override its `[bm25]` section.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k1: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Documents to keep per query.
    #[arg(long)]
    top_k: Option<usize>,
    /// Run tag written in the last TREC column.
    #[arg(long, default_value = "bm25")]
    tag: String,
}

#[derive(Serialize)]
struct RankParams {
    k1: f64,
    b: f64,
    top_k: usize,
    tag: String,
    queries: u64,
    queries_without_terms: u64,
    stopword_digest: String,
}

pub fn run(args: RankArgs) -> Result<()> {
    let config = PipelineConfig::load(args.config.as_deref())?;
    let params = Bm25Params {
        k1: args.k1.unwrap_or(config.bm25.k1),
        b: args.b.unwrap_or(config.bm25.b),
        top_k: args.top_k.unwrap_or(config.bm25.top_k),
    };
    params.validate()?;

    let index = load_index(&args.index)
        .with_context(|| format!("loading index {}", args.index.display()))?;
    let queries = read_queries_csv(&args.queries)
        .with_context(|| format!("reading {}", args.queries.display()))?;
    let stopwords = StopwordSet::english();

    let outcome = rank_topk(&index, &params, &queries, &stopwords)?;
    for query_id in &outcome.empty_queries {
        eprintln!("warning: query {query_id} has no indexable terms, no entries emitted");
    }

    let mut writer = BufWriter::new(
        File::create(&args.output)
            .with_context(|| format!("cannot create {}", args.output.display()))?,
    );
    write_run(&mut writer, &outcome.entries, &args.tag)?;
    writer.flush()?;

    let mut manifest = CommandManifest::new(
        "rank",
        RankParams {
            k1: params.k1,
            b: params.b,
            top_k: params.top_k,
            tag: args.tag.clone(),
            queries: queries.len() as u64,
            queries_without_terms: outcome.empty_queries.len() as u64,
            stopword_digest: stopwords.digest().to_string(),
        },
    );
    manifest.record_input(&args.index)?;
    manifest.record_input(&args.queries)?;
    manifest.record_output(&args.output)?;
    manifest.write_next_to(&args.output)?;

    eprintln!(
        "ranked {} queries, wrote {} entries to {}",
        queries.len(),
        outcome.entries.len(),
        args.output.display()
    );
    Ok(())
}
