use std::collections::HashSet;

use crate::util::sha256_hex;

/// The embedded English stopword list (179 words, one per line).
///
/// The list is shipped inside the binary so that two builds of the same
/// dataset can never disagree on it; its digest goes into every build
/// manifest. Entries with apostrophes are inert against cleaned text (the
/// cleaner splits them apart) but are kept so the published list stays
/// intact; the single-letter entries catch the fragments the cleaner
/// produces from contractions.
const ENGLISH_STOPWORDS: &str = include_str!("../../resources/stopwords_en.txt");

/// A set of stopwords for the search-time analysis chain.
#[derive(Debug, Clone)]
pub struct StopwordSet {
    words: HashSet<String>,
    digest: String,
}

impl StopwordSet {
    /// The embedded English list.
    pub fn english() -> Self {
        Self::from_lines(ENGLISH_STOPWORDS)
    }

    /// Build from newline-separated words; blank lines are ignored.
    /// The digest covers the raw input bytes.
    pub fn from_lines(raw: &str) -> Self {
        let words = raw
            .lines()
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::to_string)
            .collect();
        StopwordSet {
            words,
            digest: sha256_hex(raw.as_bytes()),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Hex SHA-256 of the raw list, recorded in build manifests.
    pub fn digest(&self) -> &str {
        &self.digest
    }
}
