//! Pipeline configuration: a TOML file overlaid by command-line flags
//! (flags win). The effective configuration always lands in the output
//! manifest, so a build is reproducible from its manifest alone.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use wikibench_core::dataset::{BuildConfig, QueryMode, SplitFractions};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// "title" or "first-sentence".
    pub query_source: QueryMode,
    pub min_rel: usize,
    pub max_query_words: usize,
    pub min_doc_tokens: usize,
    pub lowercase: bool,
    /// Train/validation/test fractions; must sum to 1.
    pub fractions: [f64; 3],
    pub seed: u64,
    pub bm25: Bm25Section,
    pub eval: EvalSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bm25Section {
    pub k1: f64,
    pub b: f64,
    pub top_k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSection {
    pub alpha: f64,
    /// Bonferroni family size; defaults to systems x metrics per invocation.
    pub bonferroni_m: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            query_source: QueryMode::Title,
            min_rel: 5,
            max_query_words: 10,
            min_doc_tokens: 10,
            lowercase: true,
            fractions: [0.8, 0.1, 0.1],
            seed: 0,
            bm25: Bm25Section::default(),
            eval: EvalSection::default(),
        }
    }
}

impl Default for Bm25Section {
    fn default() -> Self {
        Bm25Section {
            k1: 1.5,
            b: 0.75,
            top_k: 100,
        }
    }
}

impl Default for EvalSection {
    fn default() -> Self {
        EvalSection {
            alpha: 0.01,
            bonferroni_m: None,
        }
    }
}

impl PipelineConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(path) => {
                let raw = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read config {}", path.display()))?;
                toml::from_str(&raw).with_context(|| format!("invalid config {}", path.display()))
            }
            None => Ok(PipelineConfig::default()),
        }
    }

    pub fn to_build_config(&self) -> BuildConfig {
        BuildConfig {
            query_mode: self.query_source,
            min_rel_docs: self.min_rel,
            max_query_words: self.max_query_words,
            min_doc_tokens: self.min_doc_tokens,
            lowercase: self.lowercase,
            fractions: SplitFractions {
                train: self.fractions[0],
                validation: self.fractions[1],
                test: self.fractions[2],
            },
            seed: self.seed,
        }
    }
}
