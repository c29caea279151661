//! Bundle persistence: documents and queries as CSV, qrels in TREC format,
//! the manifest as JSON.
//!
//! Layout under the output directory:
//!
//! ```text
//! documents.csv            id_right,text_right
//! manifest.json
//! train/queries.csv        id_left,text_left
//! train/qrels.txt          <query_id> 0 <doc_id> <grade>
//! validation/...           same shape
//! test/...                 same shape
//! ```

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{DatasetBundle, DatasetError, Document, RelevanceJudgment};
use crate::textproc::CleanText;

/// Write a bundle to `dir`, creating split subdirectories. Rewrites are
/// byte-identical for identical bundles.
pub fn write_bundle(bundle: &DatasetBundle, dir: &Path) -> Result<(), DatasetError> {
    fs::create_dir_all(dir)?;

    let mut docs = csv::Writer::from_path(dir.join("documents.csv"))?;
    docs.write_record(["id_right", "text_right"])?;
    for d in &bundle.documents {
        docs.write_record([d.doc_id.as_str(), d.text.as_str()])?;
    }
    docs.flush()?;

    for (name, queries) in bundle.queries.named() {
        let split_dir = dir.join(name);
        fs::create_dir_all(&split_dir)?;
        let mut w = csv::Writer::from_path(split_dir.join("queries.csv"))?;
        w.write_record(["id_left", "text_left"])?;
        for q in queries {
            w.write_record([q.query_id.as_str(), q.text.as_str()])?;
        }
        w.flush()?;
    }

    for (name, qrels) in bundle.qrels.named() {
        let split_dir = dir.join(name);
        fs::create_dir_all(&split_dir)?;
        let mut w = BufWriter::new(File::create(split_dir.join("qrels.txt"))?);
        write_qrels(&mut w, qrels)?;
        w.flush()?;
    }

    let manifest = serde_json::to_vec_pretty(&bundle.manifest)?;
    fs::write(dir.join("manifest.json"), manifest)?;
    Ok(())
}

/// TREC qrels lines: `<query_id> 0 <doc_id> <grade>`.
pub fn write_qrels<W: Write>(writer: &mut W, qrels: &[RelevanceJudgment]) -> std::io::Result<()> {
    for j in qrels {
        writeln!(writer, "{} 0 {} {}", j.query_id, j.doc_id, j.grade)?;
    }
    Ok(())
}

/// Read a documents CSV (`id_right,text_right`) back. The text is trusted
/// as already cleaned since this toolkit wrote it.
pub fn read_documents_csv(path: &Path) -> Result<Vec<Document>, DatasetError> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        out.push(Document {
            doc_id: row.get(0).unwrap_or_default().to_string(),
            text: CleanText::from_clean(row.get(1).unwrap_or_default().to_string()),
        });
    }
    Ok(out)
}

/// Read a queries CSV (`id_left,text_left`) back as (id, text) pairs.
pub fn read_queries_csv(path: &Path) -> Result<Vec<(String, String)>, DatasetError> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        out.push((
            row.get(0).unwrap_or_default().to_string(),
            row.get(1).unwrap_or_default().to_string(),
        ));
    }
    Ok(out)
}

/// Read TREC qrels lines from a reader.
pub fn read_qrels<R: BufRead>(reader: R) -> Result<Vec<RelevanceJudgment>, DatasetError> {
    let mut out = Vec::new();
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(DatasetError::Config(format!(
                "qrels line {}: expected 4 fields, found {}",
                no + 1,
                fields.len()
            )));
        }
        let grade: u8 = fields[3].parse().map_err(|_| {
            DatasetError::Config(format!("qrels line {}: bad grade {:?}", no + 1, fields[3]))
        })?;
        out.push(RelevanceJudgment {
            query_id: fields[0].to_string(),
            doc_id: fields[2].to_string(),
            grade,
        });
    }
    Ok(out)
}

/// Read TREC qrels from a file path.
pub fn read_qrels_file(path: &Path) -> Result<Vec<RelevanceJudgment>, DatasetError> {
    read_qrels(BufReader::new(File::open(path)?))
}
