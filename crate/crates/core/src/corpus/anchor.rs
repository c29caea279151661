//! Scanner for `<a href="...">...</a>` elements in article text.

use std::ops::Range;

use percent_encoding::percent_decode_str;

use super::AnchorSpan;

/// Byte geometry of one well-formed anchor element. `element` spans the
/// whole `<a ...>...</a>`, `target` the raw (still percent-encoded) href
/// value, `text` the anchor text.
#[derive(Debug, Clone)]
pub(crate) struct RawAnchor {
    pub element: Range<usize>,
    pub target: Range<usize>,
    pub text: Range<usize>,
}

const OPENER: &str = "<a href=\"";
const CLOSER: &str = "</a>";

/// Find every well-formed anchor element, in document order. Returned
/// ranges are non-overlapping and strictly increasing. Anything malformed
/// (no closing quote, no `>`, no `</a>`, a `<` inside the tag or the anchor
/// text) is not an anchor; scanning resumes just past the failed opener so
/// the malformed bytes read as plain text.
pub(crate) fn scan_raw_anchors(text: &str) -> Vec<RawAnchor> {
    let mut anchors = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while let Some(found) = text[pos..].find(OPENER) {
        let open = pos + found;
        // On any malformed shape, retry from the byte after the opener.
        pos = open + 1;

        let target_start = open + OPENER.len();
        let Some(q) = text[target_start..].find('"') else {
            continue;
        };
        let target_end = target_start + q;

        let tag_rest_start = target_end + 1;
        let Some(gt) = text[tag_rest_start..].find('>') else {
            continue;
        };
        if bytes[tag_rest_start..tag_rest_start + gt].contains(&b'<') {
            continue;
        }

        let text_start = tag_rest_start + gt + 1;
        let Some(close) = text[text_start..].find(CLOSER) else {
            continue;
        };
        let text_end = text_start + close;
        if bytes[text_start..text_end].contains(&b'<') {
            continue;
        }

        let element_end = text_end + CLOSER.len();
        anchors.push(RawAnchor {
            element: open..element_end,
            target: target_start..target_end,
            text: text_start..text_end,
        });
        pos = element_end;
    }
    anchors
}

/// Decode a raw href target: percent-decoding (lossy on broken escapes),
/// then underscores to spaces.
pub(crate) fn decode_target(raw: &str) -> String {
    percent_decode_str(raw)
        .decode_utf8_lossy()
        .replace('_', " ")
}

/// Extract every well-formed anchor element from `text`, in order of
/// appearance. Targets are percent-decoded with underscores normalized to
/// spaces; anchors whose decoded target is empty are dropped. Malformed
/// markup is ignored. Total: never fails.
pub fn extract_anchors(text: &str) -> Vec<AnchorSpan> {
    scan_raw_anchors(text)
        .into_iter()
        .filter_map(|raw| {
            let target = decode_target(&text[raw.target.clone()]);
            if target.trim().is_empty() {
                return None;
            }
            Some(AnchorSpan {
                target,
                anchor_text: text[raw.text.clone()].to_string(),
                byte_range: raw.element,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_percent_escapes_in_target() {
        let spans = extract_anchors("<a href=\"Regressive%20autism\">worsening</a>");
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].target, "Regressive autism");
        assert_eq!(spans[0].anchor_text, "worsening");
        assert_eq!(spans[0].byte_range, 0..43);
    }

    #[test]
    fn plain_text_has_no_anchors() {
        assert!(extract_anchors("plain text with no anchors").is_empty());
    }

    #[test]
    fn consecutive_anchors_come_back_in_order() {
        let text = "<a href=\"A\">one</a><a href=\"B\">two</a>";
        let spans = extract_anchors(text);
        assert_eq!(spans.len(), 2);
        assert_eq!(spans[0].target, "A");
        assert_eq!(spans[1].target, "B");
        assert!(spans[0].byte_range.end <= spans[1].byte_range.start);
    }

    #[test]
    fn underscores_normalize_to_spaces() {
        let spans = extract_anchors("<a href=\"developmental_disorder\">x</a>");
        assert_eq!(spans[0].target, "developmental disorder");
    }

    #[test]
    fn unclosed_anchor_is_plain_text() {
        assert!(extract_anchors("<a href=\"x\">never closed").is_empty());
        assert!(extract_anchors("<a href=\"x no quote").is_empty());
    }

    #[test]
    fn empty_target_is_not_an_anchor() {
        assert!(extract_anchors("<a href=\"\">text</a>").is_empty());
        assert!(extract_anchors("<a href=\"%20\">text</a>").is_empty());
    }

    #[test]
    fn nested_opener_resolves_to_inner_anchor() {
        let text = "<a href=\"outer\"><a href=\"inner\">t</a>";
        let spans = extract_anchors(text);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].target, "inner");
    }
}
