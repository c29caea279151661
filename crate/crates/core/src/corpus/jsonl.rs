//! Streaming JSON-lines reader and writer for article records.

use std::io::{BufRead, Write};

use super::{ArticleRecord, CorpusError};

/// How many per-line issues keep their full description; past this only the
/// skip counter grows. Keeps a noisy multi-million-line dump from buying an
/// unbounded diagnostics list.
const MAX_REPORTED_ISSUES: usize = 100;

/// One rejected input line.
#[derive(Debug, Clone)]
pub struct LineIssue {
    pub line: u64,
    pub reason: String,
}

/// Counters accumulated while streaming a JSON-lines input.
#[derive(Debug, Clone, Default)]
pub struct IngestSummary {
    pub lines_read: u64,
    pub records_ok: u64,
    pub records_skipped: u64,
    /// First `MAX_REPORTED_ISSUES` rejections with line numbers.
    pub issues: Vec<LineIssue>,
}

impl IngestSummary {
    fn record_issue(&mut self, line: u64, reason: String) {
        self.records_skipped += 1;
        if self.issues.len() < MAX_REPORTED_ISSUES {
            self.issues.push(LineIssue { line, reason });
        }
    }
}

/// Streaming reader: yields one validated [`ArticleRecord`] per input line,
/// in input order. Lines that are malformed JSON, miss a required field, or
/// fail record validation are skipped and counted in the summary; only an
/// unreadable stream ends iteration with an error. Blank lines are ignored.
///
/// Memory use is bounded by the largest single record, not the stream
/// length. Uniqueness of record ids is *not* checked here (that would need
/// memory linear in the record count); consumers that materialize records
/// enforce it.
pub struct RecordStream<R: BufRead> {
    reader: R,
    line: u64,
    buf: String,
    summary: IngestSummary,
    failed: bool,
}

impl<R: BufRead> RecordStream<R> {
    pub fn new(reader: R) -> Self {
        RecordStream {
            reader,
            line: 0,
            buf: String::new(),
            summary: IngestSummary::default(),
            failed: false,
        }
    }

    /// Counters so far; complete once the iterator is exhausted.
    pub fn summary(&self) -> &IngestSummary {
        &self.summary
    }

    pub fn into_summary(self) -> IngestSummary {
        self.summary
    }
}

impl<R: BufRead> Iterator for RecordStream<R> {
    type Item = Result<ArticleRecord, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(CorpusError::Io(e)));
                }
            }
            self.line += 1;
            self.summary.lines_read += 1;
            let line = self.buf.trim_end_matches(['\n', '\r']);
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<ArticleRecord>(line) {
                Ok(record) => match record.validate() {
                    Ok(()) => {
                        self.summary.records_ok += 1;
                        return Some(Ok(record));
                    }
                    Err(reason) => self.summary.record_issue(self.line, reason),
                },
                Err(e) => self.summary.record_issue(self.line, e.to_string()),
            }
        }
    }
}

/// Serialize records back to JSON lines, one object per line, in the given
/// order. Reparsing the output yields identical records.
pub fn write_records<'a, W, I>(writer: &mut W, records: I) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a ArticleRecord>,
{
    for record in records {
        serde_json::to_writer(&mut *writer, record)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
