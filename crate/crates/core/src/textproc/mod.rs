//! Text processing.
//!
//! Two distinct chains live here and must not be confused:
//!
//! * **Dataset cleaning** ([`clean_text`]), applied to everything the
//!   dataset builder emits. Anchor markup is reduced to its anchor text,
//!   non-alphanumeric characters become spaces, whitespace collapses, and
//!   (by default) the result is lowercased. Emitted datasets are *not*
//!   stemmed and keep their stopwords.
//! * **Search-time analysis** ([`analyze_for_search`]), stopword removal
//!   followed by Porter stemming, used only by the index builder and the
//!   BM25 ranker.

mod clean;
mod porter;
mod stopwords;

pub use clean::{clean_text, CleanText};
pub use porter::porter_stem;
pub use stopwords::StopwordSet;

/// Split cleaned text into tokens. `CleanText` guarantees single spaces and
/// no leading/trailing whitespace, so this is a plain split.
pub fn tokenize(text: &CleanText) -> Vec<&str> {
    if text.as_str().is_empty() {
        return Vec::new();
    }
    text.as_str().split(' ').collect()
}

/// Search-time analysis chain: tokenize, drop stopwords, Porter-stem the
/// rest. Used by the index and ranker only; dataset emission never calls
/// this.
pub fn analyze_for_search(text: &CleanText, stopwords: &StopwordSet) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .map(porter_stem)
        .collect()
}
