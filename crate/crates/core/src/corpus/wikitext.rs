//! Bounded wikitext-to-record conversion.
//!
//! Handles the subset of wiki markup that matters for dataset building:
//! `[[Target]]` / `[[Target|anchor]]` links become anchor elements,
//! `{{...}}` templates (with nesting), `<ref>` elements, heading markers
//! and bold/italic quote runs are stripped. Everything else passes through
//! verbatim. The JSON-lines path is canonical; this converter exists so a
//! corpus can be produced without an external extraction tool.

use super::ArticleRecord;

/// Result of converting one article: the record plus any warnings raised
/// while parsing (e.g. unbalanced template braces).
#[derive(Debug, Clone)]
pub struct ConvertedArticle {
    pub record: ArticleRecord,
    pub warnings: Vec<String>,
}

/// Convert a bounded subset of wiki markup into the canonical record text
/// format (`title`, blank line, body; links as anchor elements). Unbalanced
/// template braces strip to the end of the paragraph and record a warning
/// instead of failing.
pub fn wikitext_to_record(id: &str, title: &str, wikitext: &str) -> ConvertedArticle {
    let mut warnings = Vec::new();
    let stripped = strip_templates(wikitext, id, &mut warnings);
    let stripped = strip_refs(&stripped, id, &mut warnings);
    let stripped = strip_headings(&stripped);
    let stripped = stripped.replace("'''", "").replace("''", "");
    let linked = convert_links(&stripped);
    let body = normalize_paragraphs(&linked);

    let record = ArticleRecord {
        id: id.to_string(),
        url: format!("article://{id}"),
        title: title.to_string(),
        text: format!("{title}\n\n{body}"),
    };
    ConvertedArticle { record, warnings }
}

/// Remove `{{...}}` constructs, matching braces by depth. An unclosed
/// template consumes the rest of its paragraph.
fn strip_templates(text: &str, id: &str, warnings: &mut Vec<String>) -> String {
    let bytes = text.as_bytes();
    let mut out = String::with_capacity(text.len());
    let mut segment_start = 0;
    let mut i = 0;
    while i + 1 < bytes.len() {
        if bytes[i] == b'{' && bytes[i + 1] == b'{' {
            out.push_str(&text[segment_start..i]);
            let mut depth = 1usize;
            let mut j = i + 2;
            while j < bytes.len() && depth > 0 {
                if j + 1 < bytes.len() && bytes[j] == b'{' && bytes[j + 1] == b'{' {
                    depth += 1;
                    j += 2;
                } else if j + 1 < bytes.len() && bytes[j] == b'}' && bytes[j + 1] == b'}' {
                    depth -= 1;
                    j += 2;
                } else {
                    j += 1;
                }
            }
            if depth == 0 {
                i = j;
            } else {
                let para_end = text[i..].find("\n\n").map(|p| i + p).unwrap_or(text.len());
                warnings.push(format!(
                    "article {id}: unbalanced template braces, stripped to end of paragraph"
                ));
                i = para_end;
            }
            segment_start = i;
        } else {
            i += 1;
        }
    }
    out.push_str(&text[segment_start..]);
    out
}

/// Remove `<ref .../>` and `<ref ...>...</ref>` elements. An unclosed ref
/// consumes the rest of its paragraph.
fn strip_refs(text: &str, id: &str, warnings: &mut Vec<String>) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pos = 0;
    while let Some(found) = text[pos..].find("<ref") {
        let start = pos + found;
        out.push_str(&text[pos..start]);
        let after = match text[start..].find('>') {
            Some(gt) => {
                let tag_end = start + gt;
                if text[..tag_end].ends_with('/') {
                    tag_end + 1
                } else {
                    match text[tag_end..].find("</ref>") {
                        Some(c) => tag_end + c + "</ref>".len(),
                        None => {
                            warnings.push(format!(
                                "article {id}: unclosed <ref>, stripped to end of paragraph"
                            ));
                            text[start..].find("\n\n").map(|p| start + p).unwrap_or(text.len())
                        }
                    }
                }
            }
            None => {
                warnings.push(format!(
                    "article {id}: unclosed <ref>, stripped to end of paragraph"
                ));
                text[start..].find("\n\n").map(|p| start + p).unwrap_or(text.len())
            }
        };
        pos = after;
    }
    out.push_str(&text[pos..]);
    out
}

/// Strip `== Heading ==` markers, keeping the heading text as its own
/// paragraph.
fn strip_headings(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.len() > 2 && trimmed.starts_with('=') && trimmed.ends_with('=') {
            let heading = trimmed.trim_matches('=').trim();
            out.push('\n');
            out.push_str(heading);
            out.push('\n');
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

/// Rewrite `[[Target]]` and `[[Target|anchor]]` as anchor elements.
/// File/Image/Category embeds and constructs with nested links are dropped
/// entirely; a `[[` with no closing `]]` stays literal text.
fn convert_links(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pos = 0;
    while let Some(found) = text[pos..].find("[[") {
        let start = pos + found;
        out.push_str(&text[pos..start]);
        let Some(close) = find_link_close(text, start) else {
            out.push_str(&text[start..start + 2]);
            pos = start + 2;
            continue;
        };
        let inner = &text[start + 2..close];
        pos = close + 2;
        if inner.contains("[[") || is_media_or_category(inner) {
            continue;
        }
        let (target, anchor) = match inner.find('|') {
            Some(p) => (&inner[..p], &inner[p + 1..]),
            None => (inner, inner),
        };
        if target.is_empty() {
            continue;
        }
        out.push_str(&format!("<a href=\"{target}\">{anchor}</a>"));
    }
    out.push_str(&text[pos..]);
    out
}

/// Find the `]]` matching the `[[` at `open`, honoring nesting.
fn find_link_close(text: &str, open: usize) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut depth = 1usize;
    let mut j = open + 2;
    while j < bytes.len() {
        if j + 1 < bytes.len() && bytes[j] == b'[' && bytes[j + 1] == b'[' {
            depth += 1;
            j += 2;
        } else if j + 1 < bytes.len() && bytes[j] == b']' && bytes[j + 1] == b']' {
            depth -= 1;
            if depth == 0 {
                return Some(j);
            }
            j += 2;
        } else {
            j += 1;
        }
    }
    None
}

fn is_media_or_category(inner: &str) -> bool {
    let lower = inner.trim_start().to_ascii_lowercase();
    lower.starts_with("file:") || lower.starts_with("image:") || lower.starts_with("category:")
}

/// Collapse the converted text into one line per paragraph: blocks are
/// separated by blank lines in the source, lines within a block join with a
/// space.
fn normalize_paragraphs(text: &str) -> String {
    let mut paragraphs: Vec<String> = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            if !current.is_empty() {
                paragraphs.push(current.join(" "));
                current.clear();
            }
        } else {
            current.push(trimmed);
        }
    }
    if !current.is_empty() {
        paragraphs.push(current.join(" "));
    }
    paragraphs.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_paragraph_gets_title_prefix() {
        let c = wikitext_to_record("1", "title", "plain paragraph");
        assert_eq!(c.record.text, "title\n\nplain paragraph");
        assert!(c.warnings.is_empty());
        assert!(c.record.validate().is_ok());
    }

    #[test]
    fn pipeless_link_becomes_anchor_with_trailing_letters_outside() {
        let c = wikitext_to_record("1", "title", "[[developmental disorder]]s are X");
        assert_eq!(
            c.record.text,
            "title\n\n<a href=\"developmental disorder\">developmental disorder</a>s are X"
        );
    }

    #[test]
    fn piped_link_uses_anchor_text() {
        let c = wikitext_to_record("1", "t", "a [[Regressive autism|worsening]] course");
        assert_eq!(
            c.record.body(),
            "a <a href=\"Regressive autism\">worsening</a> course"
        );
    }

    #[test]
    fn infobox_template_is_stripped() {
        let c = wikitext_to_record("1", "title", "{{Infobox|key=value|other={{nested}}}}Lead sentence.");
        assert_eq!(c.record.text, "title\n\nLead sentence.");
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn unbalanced_braces_strip_to_paragraph_end_with_warning() {
        let c = wikitext_to_record("7", "t", "{{Broken template\nstill same paragraph\n\nNext paragraph.");
        assert_eq!(c.record.body(), "Next paragraph.");
        assert_eq!(c.warnings.len(), 1);
        assert!(c.warnings[0].contains("unbalanced"));
    }

    #[test]
    fn refs_headings_and_quotes_are_stripped() {
        let src = "== History ==\nThe '''bold''' claim<ref name=\"x\">cite</ref> stands.\nAlso<ref name=\"y\"/> this.";
        let c = wikitext_to_record("1", "t", src);
        assert_eq!(c.record.body(), "History\nThe bold claim stands. Also this.");
    }

    #[test]
    fn media_and_category_links_are_dropped() {
        let c = wikitext_to_record("1", "t", "[[File:pic.jpg|thumb|[[nested]]]]Text [[Category:Things]]here.");
        assert_eq!(c.record.body(), "Text here.");
    }

    #[test]
    fn converted_record_roundtrips_through_the_parser() {
        let c = wikitext_to_record("12", "Anarchism", "Anarchism is an [[anti-authoritarian]] [[political philosophy|philosophy]].");
        let mut buf = Vec::new();
        crate::corpus::write_records(&mut buf, [&c.record]).unwrap();
        let parsed: Vec<_> = crate::corpus::RecordStream::new(&buf[..])
            .collect::<Result<Vec<_>, _>>()
            .unwrap();
        assert_eq!(parsed, vec![c.record]);
    }
}
