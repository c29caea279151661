//! On-disk index format.
//!
//! Little-endian, length-prefixed sections behind a versioned header:
//!
//! ```text
//! magic "WBIX" | version u32 | digest (u32 len + hex bytes)
//! doc_count u64 | total_tokens u64
//! per doc:  id_len u32 | id | length u32
//! term_count u64
//! per term (sorted): term_len u32 | term | postings u64 | blob_len u64 | blob
//! ```
//!
//! Postings blobs are varints: ordinal deltas (first delta from 0)
//! interleaved with term frequencies. Terms are written in sorted order so
//! two builds from the same input are byte-identical files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::codec::{read_varint, write_varint};
use super::{DocEntry, IndexError, InvertedIndex, Posting};

const MAGIC: &[u8; 4] = b"WBIX";
pub const FORMAT_VERSION: u32 = 1;

/// Write the index to `path`. Deterministic: same index, same bytes.
pub fn persist_index(index: &InvertedIndex, path: &Path) -> Result<(), IndexError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    write_bytes(&mut w, index.content_digest().as_bytes())?;

    w.write_all(&(index.doc_count() as u64).to_le_bytes())?;
    w.write_all(&index.total_tokens().to_le_bytes())?;
    for doc in index.docs() {
        write_bytes(&mut w, doc.doc_id.as_bytes())?;
        w.write_all(&doc.length.to_le_bytes())?;
    }

    let mut terms: Vec<&String> = index.postings.keys().collect();
    terms.sort();
    w.write_all(&(terms.len() as u64).to_le_bytes())?;
    let mut blob = Vec::new();
    for term in terms {
        let list = &index.postings[term];
        blob.clear();
        let mut prev = 0u32;
        for p in list {
            write_varint(&mut blob, u64::from(p.ordinal - prev));
            write_varint(&mut blob, u64::from(p.tf));
            prev = p.ordinal;
        }
        write_bytes(&mut w, term.as_bytes())?;
        w.write_all(&(list.len() as u64).to_le_bytes())?;
        w.write_all(&(blob.len() as u64).to_le_bytes())?;
        w.write_all(&blob)?;
    }
    w.flush()?;
    Ok(())
}

/// Load an index written by [`persist_index`]. Wrong magic, an unsupported
/// version, or a truncated/corrupt file are all fatal.
pub fn load_index(path: &Path) -> Result<InvertedIndex, IndexError> {
    let mut r = BufReader::new(File::open(path)?);

    let mut magic = [0u8; 4];
    read_exact(&mut r, &mut magic)?;
    if &magic != MAGIC {
        return Err(IndexError::BadMagic);
    }
    let version = read_u32(&mut r)?;
    if version != FORMAT_VERSION {
        return Err(IndexError::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let content_digest = read_string(&mut r)?;

    let doc_count = read_u64(&mut r)? as usize;
    let total_tokens = read_u64(&mut r)?;
    let mut doc_table = Vec::with_capacity(doc_count.min(1 << 20));
    for _ in 0..doc_count {
        let doc_id = read_string(&mut r)?;
        let length = read_u32(&mut r)?;
        doc_table.push(DocEntry { doc_id, length });
    }
    let length_sum: u64 = doc_table.iter().map(|d| u64::from(d.length)).sum();
    if length_sum != total_tokens {
        return Err(IndexError::Corrupt(format!(
            "document lengths sum to {length_sum} but header says {total_tokens} tokens"
        )));
    }

    let term_count = read_u64(&mut r)? as usize;
    let mut postings = std::collections::HashMap::with_capacity(term_count.min(1 << 20));
    let mut blob = Vec::new();
    for _ in 0..term_count {
        let term = read_string(&mut r)?;
        let entries = read_u64(&mut r)? as usize;
        let blob_len = read_u64(&mut r)? as usize;
        blob.clear();
        blob.resize(blob_len, 0);
        read_exact(&mut r, &mut blob)?;

        let mut list = Vec::with_capacity(entries);
        let mut pos = 0usize;
        let mut prev = 0u64;
        for i in 0..entries {
            let delta = read_varint(&blob, &mut pos)
                .ok_or_else(|| IndexError::Corrupt("truncated postings blob".to_string()))?;
            let tf = read_varint(&blob, &mut pos)
                .ok_or_else(|| IndexError::Corrupt("truncated postings blob".to_string()))?;
            // ordinals are strictly increasing, so every gap after the
            // first entry is at least 1
            if i > 0 && delta == 0 {
                return Err(IndexError::Corrupt(format!(
                    "duplicate ordinal in postings for term {term:?}"
                )));
            }
            let ordinal = prev + delta;
            if ordinal >= doc_count as u64 || tf == 0 {
                return Err(IndexError::Corrupt(format!(
                    "posting out of range for term {term:?}"
                )));
            }
            list.push(Posting {
                ordinal: ordinal as u32,
                tf: tf as u32,
            });
            prev = ordinal;
        }
        if pos != blob.len() {
            return Err(IndexError::Corrupt(format!(
                "trailing bytes in postings blob for term {term:?}"
            )));
        }
        postings.insert(term, list);
    }

    Ok(InvertedIndex {
        postings,
        doc_table,
        total_tokens,
        content_digest,
    })
}

fn write_bytes<W: Write>(w: &mut W, bytes: &[u8]) -> std::io::Result<()> {
    w.write_all(&(bytes.len() as u32).to_le_bytes())?;
    w.write_all(bytes)
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<(), IndexError> {
    r.read_exact(buf)
        .map_err(|e| IndexError::Corrupt(format!("unexpected end of file: {e}")))
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, IndexError> {
    let mut buf = [0u8; 4];
    read_exact(r, &mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, IndexError> {
    let mut buf = [0u8; 8];
    read_exact(r, &mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_string<R: Read>(r: &mut R) -> Result<String, IndexError> {
    let len = read_u32(r)? as usize;
    let mut buf = vec![0u8; len];
    read_exact(r, &mut buf)?;
    String::from_utf8(buf).map_err(|_| IndexError::Corrupt("invalid utf-8 string".to_string()))
}
