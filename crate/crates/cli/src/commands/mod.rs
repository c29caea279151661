pub mod build;
pub mod eval;
pub mod extract;
pub mod index;
pub mod rank;
pub mod stats;

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use wikibench_core::util::sha256_file;

/// Reproducibility record written next to command outputs: which command
/// ran, with what parameters, over which inputs (by digest). Contains no
/// timestamps so reruns are byte-identical.
#[derive(Debug, Serialize)]
pub struct CommandManifest<P: Serialize> {
    pub command: &'static str,
    pub params: P,
    /// input path -> sha256
    pub inputs: BTreeMap<String, String>,
    /// output path -> sha256
    pub outputs: BTreeMap<String, String>,
}

impl<P: Serialize> CommandManifest<P> {
    pub fn new(command: &'static str, params: P) -> Self {
        CommandManifest {
            command,
            params,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn record_input(&mut self, path: &Path) -> Result<()> {
        let digest = digest_path(path)?;
        self.inputs.insert(path.display().to_string(), digest);
        Ok(())
    }

    pub fn record_output(&mut self, path: &Path) -> Result<()> {
        let digest = digest_path(path)?;
        self.outputs.insert(path.display().to_string(), digest);
        Ok(())
    }

    /// Write `<output>.manifest.json` next to an output file.
    pub fn write_next_to(&self, output: &Path) -> Result<()> {
        let manifest_path = sibling_manifest_path(output);
        let body = serde_json::to_vec_pretty(self)?;
        std::fs::write(&manifest_path, body)
            .with_context(|| format!("cannot write manifest {}", manifest_path.display()))?;
        Ok(())
    }
}

/// Digest one file, or a directory as the hash of its sorted
/// (relative name, file digest) pairs.
fn digest_path(path: &Path) -> Result<String> {
    if path.is_dir() {
        let mut entries: Vec<(String, String)> = Vec::new();
        let mut stack = vec![path.to_path_buf()];
        while let Some(dir) = stack.pop() {
            for entry in std::fs::read_dir(&dir)? {
                let child = entry?.path();
                if child.is_dir() {
                    stack.push(child);
                } else {
                    let rel = child
                        .strip_prefix(path)
                        .unwrap_or(&child)
                        .to_string_lossy()
                        .to_string();
                    entries.push((rel, sha256_file(&child)?));
                }
            }
        }
        entries.sort();
        let mut digest = wikibench_core::util::ContentDigest::new();
        for (name, file_digest) in entries {
            digest.update(name.as_bytes());
            digest.update(b"\0");
            digest.update(file_digest.as_bytes());
            digest.update(b"\n");
        }
        Ok(digest.finish())
    } else {
        sha256_file(path).with_context(|| format!("cannot digest {}", path.display()))
    }
}

pub fn sibling_manifest_path(output: &Path) -> std::path::PathBuf {
    let mut name = output
        .file_name()
        .map(|n| n.to_string_lossy().to_string())
        .unwrap_or_else(|| "output".to_string());
    name.push_str(".manifest.json");
    output.with_file_name(name)
}
