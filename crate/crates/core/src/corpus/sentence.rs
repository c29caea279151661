//! First-sentence extraction.

use super::anchor::{extract_anchors, scan_raw_anchors};
use super::{ArticleRecord, CorpusError, FirstSentence};

/// Extract the first sentence of an article body together with the anchors
/// it contains (byte ranges relative to the returned sentence).
///
/// The sentence boundary is a `.`, `!` or `?` immediately followed by
/// whitespace and then a non-lowercase character. Characters inside anchor
/// tag syntax (`<a href="...">` and `</a>`) are invisible to the scan, so
/// dots inside link targets never end a sentence. A boundary that would
/// fall inside an anchor element is extended to the end of that element so
/// the returned markup stays well formed. With no boundary in the first
/// paragraph, the whole first paragraph is the sentence.
pub fn first_sentence(record: &ArticleRecord) -> Result<FirstSentence, CorpusError> {
    let body = record.body();
    if body.trim().is_empty() {
        return Err(CorpusError::EmptyBody {
            id: record.id.clone(),
        });
    }
    let end = first_sentence_end(body);
    let text = &body[..end];
    Ok(FirstSentence {
        text: text.to_string(),
        anchors: extract_anchors(text),
    })
}

/// Byte offset in `body` where the first sentence ends. `body` must start
/// at the first paragraph (see [`ArticleRecord::body`]).
pub(crate) fn first_sentence_end(body: &str) -> usize {
    let paragraph_end = body.find('\n').unwrap_or(body.len());
    let paragraph = &body[..paragraph_end];
    let anchors = scan_raw_anchors(paragraph);

    // Tag regions (the opening tag and the literal "</a>") are skipped.
    let mut skips = Vec::with_capacity(anchors.len() * 2);
    for a in &anchors {
        skips.push(a.element.start..a.text.start);
        skips.push(a.text.end..a.element.end);
    }

    let next_visible = |mut pos: usize| -> usize {
        loop {
            match skips.iter().find(|r| r.contains(&pos)) {
                Some(r) => pos = r.end,
                None => return pos,
            }
        }
    };

    let bytes = paragraph.as_bytes();
    let mut cut = None;
    let mut pos = next_visible(0);
    'scan: while pos < paragraph.len() {
        let b = bytes[pos];
        if matches!(b, b'.' | b'!' | b'?') {
            // Whitespace must follow, then the first visible non-whitespace
            // character must not be lowercase.
            let mut look = next_visible(pos + 1);
            let mut saw_whitespace = false;
            while look < paragraph.len() {
                let c = paragraph[look..].chars().next().expect("in bounds");
                if c.is_whitespace() {
                    saw_whitespace = true;
                    look = next_visible(look + c.len_utf8());
                } else {
                    if saw_whitespace && !c.is_lowercase() {
                        cut = Some(pos + 1);
                        break 'scan;
                    }
                    break;
                }
            }
        }
        // Terminators are ASCII; everything else can be stepped over
        // bytewise as long as we re-align on visibility regions.
        pos = next_visible(pos + utf8_len(bytes[pos]));
    }

    match cut {
        Some(mut c) => {
            // Never cut inside an anchor element.
            if let Some(a) = anchors.iter().find(|a| c > a.element.start && c < a.element.end) {
                c = a.element.end;
            }
            c
        }
        None => paragraph_end,
    }
}

fn utf8_len(first_byte: u8) -> usize {
    match first_byte {
        b if b < 0x80 => 1,
        b if b < 0xe0 => 2,
        b if b < 0xf0 => 3,
        _ => 4,
    }
}
