//! `wikibench build`: JSON-lines dump to dataset bundle.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use wikibench_core::dataset::{build_dataset, dataset_stats, write_bundle, JsonlFileSource, QueryMode};

use crate::config::PipelineConfig;

#[derive(Args)]
pub struct BuildArgs {
    /// JSON-lines article dump.
    #[arg(long)]
    input: PathBuf,
    /// Output directory for the bundle.
    #[arg(long)]
    output: PathBuf,
    /// TOML configuration file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Query source: title or first-sentence.
    #[arg(long, value_enum)]
    query_source: Option<QuerySourceFlag>,
    /// Minimum relevant documents for a query to be kept.
    #[arg(long)]
    min_rel: Option<usize>,
    /// Maximum words per query.
    #[arg(long)]
    max_query_words: Option<usize>,
    /// Minimum tokens for a document to be kept.
    #[arg(long)]
    min_doc_tokens: Option<usize>,
    /// Keep the original character case in emitted text.
    #[arg(long)]
    keep_case: bool,
    /// Train/validation/test fractions, e.g. 0.8,0.1,0.1.
    #[arg(long, value_delimiter = ',')]
    fractions: Option<Vec<f64>>,
    /// Shuffle seed for the query split.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum QuerySourceFlag {
    Title,
    FirstSentence,
}

pub fn run(args: BuildArgs) -> Result<()> {
    let mut config = PipelineConfig::load(args.config.as_deref())?;
    if let Some(source) = args.query_source {
        config.query_source = match source {
            QuerySourceFlag::Title => QueryMode::Title,
            QuerySourceFlag::FirstSentence => QueryMode::FirstSentence,
        };
    }
    if let Some(v) = args.min_rel {
        config.min_rel = v;
    }
    if let Some(v) = args.max_query_words {
        config.max_query_words = v;
    }
    if let Some(v) = args.min_doc_tokens {
        config.min_doc_tokens = v;
    }
    if args.keep_case {
        config.lowercase = false;
    }
    if let Some(f) = &args.fractions {
        anyhow::ensure!(
            f.len() == 3,
            "--fractions needs exactly three comma-separated values, got {}",
            f.len()
        );
        config.fractions = [f[0], f[1], f[2]];
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }

    let source = JsonlFileSource::new(&args.input);
    let bundle = build_dataset(&source, &config.to_build_config())
        .with_context(|| format!("building dataset from {}", args.input.display()))?;
    write_bundle(&bundle, &args.output)
        .with_context(|| format!("writing bundle to {}", args.output.display()))?;

    let m = &bundle.manifest;
    eprintln!(
        "built {} documents, {} queries ({} train / {} validation / {} test), {} qrels",
        m.documents,
        m.queries.total,
        m.queries.train,
        m.queries.validation,
        m.queries.test,
        m.qrels.total
    );
    let e = &m.exclusions;
    if e.invalid_records > 0 {
        eprintln!("warning: {} invalid input lines skipped", e.invalid_records);
    }
    if e.duplicate_ids > 0 {
        eprintln!("warning: {} records with duplicate ids skipped", e.duplicate_ids);
    }
    if e.duplicate_titles > 0 {
        eprintln!(
            "warning: {} duplicate titles excluded from link resolution",
            e.duplicate_titles
        );
    }
    if e.unresolved_link_targets > 0 {
        eprintln!(
            "note: {} first-sentence link targets matched no title",
            e.unresolved_link_targets
        );
    }
    print!("{}", dataset_stats(&bundle).render());
    Ok(())
}
