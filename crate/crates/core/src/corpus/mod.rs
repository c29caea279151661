//! Article ingestion: JSON-lines parsing, anchor extraction, first-sentence
//! splitting, and a bounded wikitext converter.
//!
//! The canonical input is UTF-8 JSON lines, one object per line with string
//! fields `id`, `url`, `title` and `text`. The `text` field starts with a
//! title line, then a blank-line separator, then the body; internal links
//! are encoded as `<a href="TARGET">ANCHOR</a>` with a percent-encoded
//! target. The wikitext converter produces the same shape from a bounded
//! subset of wiki markup.

pub(crate) mod anchor;
mod jsonl;
pub(crate) mod sentence;
mod wikitext;

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use anchor::extract_anchors;
pub use jsonl::{write_records, IngestSummary, LineIssue, RecordStream};
pub use sentence::first_sentence;
pub use wikitext::{wikitext_to_record, ConvertedArticle};

/// One extracted article.
///
/// Immutable once constructed and safe to move across threads. Validation
/// (see [`ArticleRecord::validate`]) enforces a non-empty title and that the
/// text's first blank-line-separated segment equals the title.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArticleRecord {
    pub id: String,
    pub url: String,
    pub title: String,
    pub text: String,
}

impl ArticleRecord {
    /// Check the record-level invariants, returning a human-readable reason
    /// on failure.
    pub fn validate(&self) -> Result<(), String> {
        if self.title.trim().is_empty() {
            return Err("title is empty".to_string());
        }
        let first_segment = match self.text.find("\n\n") {
            Some(pos) => &self.text[..pos],
            None => self.text.as_str(),
        };
        if first_segment != self.title {
            return Err(format!(
                "text does not start with the title line (expected {:?}, found {:?})",
                self.title, first_segment
            ));
        }
        Ok(())
    }

    /// The body: everything after the title line and its blank-line
    /// separator, with any extra leading newlines dropped.
    pub fn body(&self) -> &str {
        match self.text.find("\n\n") {
            Some(pos) => self.text[pos + 2..].trim_start_matches('\n'),
            None => "",
        }
    }
}

/// A well-formed internal link inside article text.
///
/// `byte_range` brackets the whole `<a ...>...</a>` element in the text the
/// span was extracted from. The target is percent-decoded and has
/// underscores normalized to spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorSpan {
    pub target: String,
    pub anchor_text: String,
    pub byte_range: Range<usize>,
}

/// First sentence of an article body plus the anchors it contains; anchor
/// byte ranges are relative to `text`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstSentence {
    pub text: String,
    pub anchors: Vec<AnchorSpan>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    /// The underlying stream failed; nothing more can be read.
    #[error("failed to read input stream: {0}")]
    Io(#[from] std::io::Error),
    /// A record has no body text to mine.
    #[error("article {id} has an empty body")]
    EmptyBody { id: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_safe_to_share_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ArticleRecord>();
        assert_send_sync::<AnchorSpan>();
        assert_send_sync::<FirstSentence>();
    }

    #[test]
    fn body_splits_at_the_first_blank_line() {
        let record = ArticleRecord {
            id: "1".into(),
            url: String::new(),
            title: "T".into(),
            text: "T\n\nbody line\nsecond".into(),
        };
        assert_eq!(record.body(), "body line\nsecond");
        assert!(record.validate().is_ok());
    }

    #[test]
    fn validation_rejects_blank_titles_and_mismatched_text() {
        let blank = ArticleRecord {
            id: "1".into(),
            url: String::new(),
            title: "  ".into(),
            text: "  \n\nbody".into(),
        };
        assert!(blank.validate().is_err());
        let mismatched = ArticleRecord {
            id: "1".into(),
            url: String::new(),
            title: "Autism".into(),
            text: "Wrong\n\nbody".into(),
        };
        assert!(mismatched.validate().is_err());
    }
}
