//! `wikibench`: build retrieval datasets from wiki-style article dumps,
//! index and rank them with BM25, and evaluate run files.
//!
//! Exit codes: 0 success, 1 fatal error, 2 usage error.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "wikibench", version, about = "Wiki-corpus retrieval benchmark toolkit")]
struct Cli {
    /// Worker threads for parallel stages (0 = auto). Falls back to the
    /// WIKIBENCH_THREADS environment variable.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert wikitext articles to the canonical JSON-lines format.
    Extract(commands::extract::ExtractArgs),
    /// Build documents, per-split queries and qrels from a JSON-lines dump.
    Build(commands::build::BuildArgs),
    /// Build or inspect an inverted index.
    #[command(subcommand)]
    Index(commands::index::IndexCommand),
    /// Rank queries against an index with BM25 and write a TREC run file.
    Rank(commands::rank::RankArgs),
    /// Evaluate run files against qrels, with significance testing.
    Eval(commands::eval::EvalArgs),
    /// Report summary statistics for a built dataset directory.
    Stats(commands::stats::StatsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool(cli.threads);
    let result = match cli.command {
        Command::Extract(args) => commands::extract::run(args),
        Command::Build(args) => commands::build::run(args),
        Command::Index(cmd) => commands::index::run(cmd),
        Command::Rank(args) => commands::rank::run(args),
        Command::Eval(args) => commands::eval::run(args),
        Command::Stats(args) => commands::stats::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn init_thread_pool(flag: Option<usize>) {
    let count = flag.or_else(|| {
        std::env::var("WIKIBENCH_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = count {
        if n > 0 {
            // A failure here means a pool already exists; keep going.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
