//! `wikibench extract`: wikitext to canonical JSON lines.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;
use wikibench_core::corpus::{wikitext_to_record, write_records};

use super::CommandManifest;

#[derive(Args)]
pub struct ExtractArgs {
    /// A directory of one-article wikitext files, or a two-column
    /// (title TAB wikitext) .tsv file with newlines escaped as \n.
    #[arg(long)]
    input: PathBuf,
    /// Output JSON-lines file.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Serialize)]
struct ExtractParams {
    input: String,
    articles: u64,
    warnings: u64,
}

pub fn run(args: ExtractArgs) -> Result<()> {
    if !args.input.exists() {
        bail!("input path {} does not exist", args.input.display());
    }

    let mut records = Vec::new();
    let mut warning_count = 0u64;
    if args.input.is_dir() {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.input)
            .with_context(|| format!("cannot read directory {}", args.input.display()))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        paths.sort();
        for (i, path) in paths.iter().enumerate() {
            let wikitext = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let title = path
                .file_stem()
                .map(|s| s.to_string_lossy().replace('_', " "))
                .unwrap_or_else(|| format!("Article {}", i + 1));
            let converted = wikitext_to_record(&(i + 1).to_string(), &title, &wikitext);
            for warning in &converted.warnings {
                eprintln!("warning: {warning}");
                warning_count += 1;
            }
            records.push(converted.record);
        }
    } else {
        let reader = BufReader::new(
            File::open(&args.input)
                .with_context(|| format!("cannot open {}", args.input.display()))?,
        );
        for (no, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let Some((title, raw)) = line.split_once('\t') else {
                bail!("line {}: expected 'title<TAB>wikitext'", no + 1);
            };
            let wikitext = raw.replace("\\n", "\n");
            let converted = wikitext_to_record(&(no + 1).to_string(), title.trim(), &wikitext);
            for warning in &converted.warnings {
                eprintln!("warning: {warning}");
                warning_count += 1;
            }
            records.push(converted.record);
        }
    }

    let mut writer = BufWriter::new(
        File::create(&args.output)
            .with_context(|| format!("cannot create {}", args.output.display()))?,
    );
    write_records(&mut writer, &records)?;
    writer.flush()?;

    let mut manifest = CommandManifest::new(
        "extract",
        ExtractParams {
            input: args.input.display().to_string(),
            articles: records.len() as u64,
            warnings: warning_count,
        },
    );
    manifest.record_input(&args.input)?;
    manifest.record_output(&args.output)?;
    manifest.write_next_to(&args.output)?;

    eprintln!(
        "extracted {} articles to {} ({} warnings)",
        records.len(),
        args.output.display(),
        warning_count
    );
    Ok(())
}
