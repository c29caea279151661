//! `wikibench eval`: metrics, significance tests and the LaTeX table.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use serde_json::json;
use wikibench_core::bm25::read_run;
use wikibench_core::dataset::read_qrels_file;
use wikibench_core::eval::{evaluate_run, latex_table, Evaluation, Qrels, SystemEval, METRICS};

use crate::config::PipelineConfig;

use super::CommandManifest;

#[derive(Args)]
pub struct EvalArgs {
    /// TREC qrels file.
    #[arg(long)]
    qrels: PathBuf,
    /// Baseline run file (the significance reference).
    #[arg(long)]
    baseline: PathBuf,
    /// System run files to compare against the baseline.
    #[arg(long = "system")]
    systems: Vec<PathBuf>,
    /// Output directory for per-query TSVs, summary.json and table.tex.
    #[arg(long)]
    output: PathBuf,
    /// TOML configuration file; flags below override its `[eval]` section.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Significance level for the +/- markers.
    #[arg(long)]
    alpha: Option<f64>,
    /// Bonferroni family size (default: systems x metrics).
    #[arg(long)]
    bonferroni_m: Option<usize>,
}

#[derive(Serialize)]
struct EvalParams {
    alpha: f64,
    bonferroni_m: usize,
    baseline: String,
    systems: Vec<String>,
}

fn run_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_evaluation(path: &Path, qrels: &Qrels) -> Result<Evaluation> {
    let reader = BufReader::new(
        File::open(path).with_context(|| format!("cannot open run file {}", path.display()))?,
    );
    let run = read_run(reader).with_context(|| format!("parsing run file {}", path.display()))?;
    evaluate_run(&run, qrels).with_context(|| format!("evaluating {}", path.display()))
}

fn write_per_query_tsv(dir: &Path, name: &str, evaluation: &Evaluation) -> Result<PathBuf> {
    let path = dir.join(format!("per_query.{name}.tsv"));
    let mut w = BufWriter::new(File::create(&path)?);
    write!(w, "query_id")?;
    for metric in METRICS {
        write!(w, "\t{}", metric.label())?;
    }
    writeln!(w)?;
    for row in &evaluation.per_query {
        write!(w, "{}", row.query_id)?;
        for value in row.values {
            write!(w, "\t{value:.6}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(path)
}

fn means_json(evaluation: &Evaluation) -> serde_json::Value {
    let mut means = serde_json::Map::new();
    for (i, metric) in METRICS.iter().enumerate() {
        means.insert(metric.label(), json!(evaluation.means[i]));
    }
    serde_json::Value::Object(means)
}

pub fn run(args: EvalArgs) -> Result<()> {
    let config = PipelineConfig::load(args.config.as_deref())?;
    let alpha = args.alpha.unwrap_or(config.eval.alpha);
    let family_size = args
        .bonferroni_m
        .or(config.eval.bonferroni_m)
        .unwrap_or(args.systems.len() * METRICS.len())
        .max(1);

    let qrels = Qrels::from_judgments(
        &read_qrels_file(&args.qrels)
            .with_context(|| format!("reading qrels {}", args.qrels.display()))?,
    );
    std::fs::create_dir_all(&args.output)?;

    let baseline = SystemEval {
        name: run_name(&args.baseline),
        evaluation: load_evaluation(&args.baseline, &qrels)?,
    };
    let mut systems = Vec::new();
    for path in &args.systems {
        systems.push(SystemEval {
            name: run_name(path),
            evaluation: load_evaluation(path, &qrels)?,
        });
    }

    write_per_query_tsv(&args.output, &baseline.name, &baseline.evaluation)?;
    for system in &systems {
        write_per_query_tsv(&args.output, &system.name, &system.evaluation)?;
    }

    let table = latex_table(&baseline, &systems, alpha, Some(family_size))?;
    std::fs::write(args.output.join("table.tex"), &table.source)?;

    let systems_json: Vec<serde_json::Value> = systems
        .iter()
        .zip(&table.verdicts)
        .map(|(system, (_, verdicts))| {
            let significance: serde_json::Map<String, serde_json::Value> = verdicts
                .iter()
                .map(|v| {
                    (
                        v.metric.label(),
                        json!({
                            "t": if v.t_statistic.is_finite() { json!(v.t_statistic) } else { json!(v.t_statistic.to_string()) },
                            "p_raw": v.p_raw,
                            "p_corrected": v.p_corrected,
                            "marker": v.marker.symbol(),
                        }),
                    )
                })
                .collect();
            json!({
                "name": system.name,
                "means": means_json(&system.evaluation),
                "significance_vs_baseline": significance,
            })
        })
        .collect();
    let summary = json!({
        "alpha": alpha,
        "bonferroni_m": family_size,
        "judged_queries": qrels.query_count(),
        "baseline": { "name": baseline.name, "means": means_json(&baseline.evaluation) },
        "systems": systems_json,
    });
    std::fs::write(
        args.output.join("summary.json"),
        serde_json::to_vec_pretty(&summary)?,
    )?;

    let mut manifest = CommandManifest::new(
        "eval",
        EvalParams {
            alpha,
            bonferroni_m: family_size,
            baseline: baseline.name.clone(),
            systems: systems.iter().map(|s| s.name.clone()).collect(),
        },
    );
    manifest.record_input(&args.qrels)?;
    manifest.record_input(&args.baseline)?;
    for path in &args.systems {
        manifest.record_input(path)?;
    }
    let manifest_body = serde_json::to_vec_pretty(&manifest)?;
    std::fs::write(args.output.join("manifest.json"), manifest_body)?;

    print!("{}", table.source);
    eprintln!(
        "evaluated {} run(s) over {} queries; outputs in {}",
        1 + systems.len(),
        qrels.query_count(),
        args.output.display()
    );
    Ok(())
}
