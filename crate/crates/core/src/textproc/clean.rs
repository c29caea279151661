use crate::corpus::anchor::scan_raw_anchors;

/// Cleaned text: only ASCII alphanumerics separated by single spaces, no
/// leading or trailing space, no anchor markup. Lowercase under the default
/// configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CleanText(String);

impl CleanText {
    /// Wrap a string that already satisfies the cleaned-text invariants,
    /// e.g. text read back from a dataset file this toolkit produced.
    /// Re-cleaning is the safe route for anything else; `clean_text` is
    /// idempotent, so re-cleaning trusted input is merely wasted work.
    pub fn from_clean(value: String) -> Self {
        CleanText(value)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for CleanText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Clean raw article text for dataset emission.
///
/// Anchor elements are reduced to their anchor text (the href target is
/// dropped), every character outside ASCII `[A-Za-z0-9]` becomes a space
/// (non-ASCII letters included), whitespace runs collapse to single spaces,
/// and the result is lowercased when `lowercase` is set. Malformed anchor
/// markup is left in place and falls through the character filter like any
/// other text. Total and idempotent.
pub fn clean_text(raw: &str, lowercase: bool) -> CleanText {
    // Pass 1: drop anchor markup, keep anchor text.
    let anchors = scan_raw_anchors(raw);
    let mut visible = String::with_capacity(raw.len());
    let mut pos = 0;
    for a in &anchors {
        visible.push_str(&raw[pos..a.element.start]);
        visible.push_str(&raw[a.text.clone()]);
        pos = a.element.end;
    }
    visible.push_str(&raw[pos..]);

    // Pass 2: character filter with whitespace collapsing.
    let mut out = String::with_capacity(visible.len());
    let mut pending_space = false;
    for c in visible.chars() {
        if c.is_ascii_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(if lowercase { c.to_ascii_lowercase() } else { c });
        } else {
            pending_space = true;
        }
    }
    CleanText(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_reduces_to_its_text() {
        let cleaned = clean_text("<a href=\"Regressive%20autism\">worsening</a>", true);
        assert_eq!(cleaned.as_str(), "worsening");
    }

    #[test]
    fn punctuation_becomes_spaces() {
        assert_eq!(clean_text("Anti-Authoritarian!", true).as_str(), "anti authoritarian");
    }

    #[test]
    fn empty_input_stays_empty() {
        assert_eq!(clean_text("", true).as_str(), "");
    }

    #[test]
    fn lowercasing_is_optional() {
        assert_eq!(clean_text("Anti-Authoritarian!", false).as_str(), "Anti Authoritarian");
    }

    #[test]
    fn non_ascii_letters_become_spaces() {
        assert_eq!(clean_text("naïve café", true).as_str(), "na ve caf");
    }

    #[test]
    fn malformed_anchor_degrades_to_plain_text() {
        let cleaned = clean_text("<a href=\"x\">unclosed anchor", true);
        assert_eq!(cleaned.as_str(), "a href x unclosed anchor");
    }

    #[test]
    fn cleaning_is_idempotent() {
        let once = clean_text("Some <a href=\"T\">linked</a> text, with Punct!", true);
        let twice = clean_text(once.as_str(), true);
        assert_eq!(once, twice);
    }
}
