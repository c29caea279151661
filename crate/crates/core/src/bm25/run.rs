//! TREC run file format: `<query_id> Q0 <doc_id> <rank> <score> <tag>`,
//! space-separated, score printed with six decimal places.

use std::io::{BufRead, Write};

use super::{RankError, RunEntry};

/// Write run entries. The writer does not reorder: callers pass entries in
/// query order with per-query ranks already assigned.
pub fn write_run<W: Write>(w: &mut W, entries: &[RunEntry], tag: &str) -> std::io::Result<()> {
    for e in entries {
        writeln!(
            w,
            "{} Q0 {} {} {:.6} {}",
            e.query_id, e.doc_id, e.rank, e.score, tag
        )?;
    }
    Ok(())
}

/// Parse a run file. Blank lines are ignored; anything else malformed is an
/// error naming the line.
pub fn read_run<R: BufRead>(reader: R) -> Result<Vec<RunEntry>, RankError> {
    let mut entries = Vec::new();
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(RankError::Parse {
                line: no + 1,
                reason: format!("expected 6 fields, found {}", fields.len()),
            });
        }
        let rank: u32 = fields[3].parse().map_err(|_| RankError::Parse {
            line: no + 1,
            reason: format!("bad rank {:?}", fields[3]),
        })?;
        let score: f64 = fields[4].parse().map_err(|_| RankError::Parse {
            line: no + 1,
            reason: format!("bad score {:?}", fields[4]),
        })?;
        entries.push(RunEntry {
            query_id: fields[0].to_string(),
            doc_id: fields[2].to_string(),
            rank,
            score,
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_trec_lines() {
        let entries = vec![
            RunEntry { query_id: "q1".into(), doc_id: "d9".into(), rank: 1, score: 1.25 },
            RunEntry { query_id: "q1".into(), doc_id: "d3".into(), rank: 2, score: 0.5 },
        ];
        let mut buf = Vec::new();
        write_run(&mut buf, &entries, "bm25").unwrap();
        assert_eq!(
            String::from_utf8_lossy(&buf),
            "q1 Q0 d9 1 1.250000 bm25\nq1 Q0 d3 2 0.500000 bm25\n"
        );
    }

    #[test]
    fn roundtrips_through_the_parser() {
        let entries = vec![RunEntry { query_id: "q".into(), doc_id: "d".into(), rank: 1, score: 0.333333 }];
        let mut buf = Vec::new();
        write_run(&mut buf, &entries, "t").unwrap();
        assert_eq!(read_run(&buf[..]).unwrap(), entries);
    }

    #[test]
    fn malformed_line_names_its_number() {
        let err = read_run(&b"q Q0 d one 0.5 tag\n"[..]).unwrap_err();
        assert!(matches!(err, RankError::Parse { line: 1, .. }));
        let err = read_run(&b"q Q0 d 1 0.5 tag\nshort line\n"[..]).unwrap_err();
        assert!(matches!(err, RankError::Parse { line: 2, .. }));
    }
}
