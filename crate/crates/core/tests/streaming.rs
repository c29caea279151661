//! Streaming-memory contract: parsing a multi-gigabyte record stream must
//! use memory bounded by the largest single record, not the stream length.
//!
//! This test lives in its own binary so resident-memory readings are not
//! polluted by other tests.

use std::io::{BufReader, Read};

use wikibench_core::corpus::RecordStream;

/// Generates a JSON-lines stream of small records on the fly; nothing is
/// ever materialized.
struct SyntheticJsonl {
    target_bytes: u64,
    produced_bytes: u64,
    next_id: u64,
    pending: Vec<u8>,
    offset: usize,
}

impl SyntheticJsonl {
    fn new(target_bytes: u64) -> Self {
        SyntheticJsonl {
            target_bytes,
            produced_bytes: 0,
            next_id: 0,
            pending: Vec::new(),
            offset: 0,
        }
    }

    fn refill(&mut self) {
        self.next_id += 1;
        let id = self.next_id;
        let line = format!(
            "{{\"id\":\"{id}\",\"url\":\"synthetic://{id}\",\"title\":\"Article {id}\",\
             \"text\":\"Article {id}\\n\\nArticle number {id} is a synthetic record used to \
             exercise the streaming reader. It carries a couple of sentences of filler text \
             so each line lands in the low hundreds of bytes.\"}}\n"
        );
        self.pending = line.into_bytes();
        self.offset = 0;
    }
}

impl Read for SyntheticJsonl {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        if self.offset >= self.pending.len() {
            if self.produced_bytes >= self.target_bytes {
                return Ok(0);
            }
            self.refill();
        }
        let n = (self.pending.len() - self.offset).min(buf.len());
        buf[..n].copy_from_slice(&self.pending[self.offset..self.offset + n]);
        self.offset += n;
        self.produced_bytes += n as u64;
        Ok(n)
    }
}

#[cfg(target_os = "linux")]
fn resident_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    for field in ["VmHWM:", "VmRSS:"] {
        if let Some(kb) = status
            .lines()
            .find(|l| l.starts_with(field))
            .and_then(|l| l.split_whitespace().nth(1))
            .and_then(|v| v.parse().ok())
        {
            return Some(kb);
        }
    }
    None
}

#[test]
fn multi_gigabyte_stream_parses_in_bounded_memory() {
    const TARGET_BYTES: u64 = 2_500_000_000;
    const MEMORY_CAP_KB: u64 = 512 * 1024;

    let reader = BufReader::with_capacity(1 << 20, SyntheticJsonl::new(TARGET_BYTES));
    let mut stream = RecordStream::new(reader);

    let mut records = 0u64;
    let mut max_resident = 0u64;
    for record in stream.by_ref() {
        let record = record.expect("synthetic stream never fails");
        assert!(!record.id.is_empty());
        records += 1;
        #[cfg(target_os = "linux")]
        if records.is_multiple_of(1_000_000) {
            if let Some(kb) = resident_kb() {
                max_resident = max_resident.max(kb);
                assert!(
                    kb < MEMORY_CAP_KB,
                    "resident memory {kb} kB broke the {MEMORY_CAP_KB} kB cap after {records} records"
                );
            }
        }
    }

    assert!(records > 5_000_000, "expected millions of records, got {records}");
    assert_eq!(stream.summary().records_ok, records);
    assert_eq!(stream.summary().records_skipped, 0);
    println!(
        "streamed {records} records (~{} MB) with max resident {} MB",
        TARGET_BYTES / (1024 * 1024),
        max_resident / 1024
    );
}
