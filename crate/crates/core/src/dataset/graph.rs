//! First-sentence link graph.

use std::collections::{BTreeSet, HashMap};

use crate::corpus::{first_sentence, ArticleRecord};
use crate::util::compare_ids;

/// Directed graph over articles: an edge `a -> b` means an anchor in `a`'s
/// first sentence resolves to article `b`'s title. Built single-writer,
/// then frozen for concurrent reads.
#[derive(Debug, Clone, Default)]
pub struct TopicLinkGraph {
    pub(super) edges: HashMap<String, BTreeSet<String>>,
    /// Anchor occurrences whose target matched no title.
    pub unresolved_targets: u64,
    /// Articles that lost title resolution to a lower-id article.
    pub duplicate_titles: u64,
}

impl TopicLinkGraph {
    /// Ids of the articles `source` links to from its first sentence.
    pub fn links_from(&self, source: &str) -> impl Iterator<Item = &str> {
        self.edges.get(source).into_iter().flatten().map(String::as_str)
    }

    pub fn contains_edge(&self, source: &str, target: &str) -> bool {
        self.edges.get(source).is_some_and(|t| t.contains(target))
    }

    /// All edges as (source, target) pairs, in id order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut sources: Vec<&String> = self.edges.keys().collect();
        sources.sort_by(|a, b| compare_ids(a, b));
        sources
            .into_iter()
            .flat_map(|s| self.edges[s].iter().map(move |t| (s.as_str(), t.as_str())))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().map(BTreeSet::len).sum()
    }
}

/// Map from normalized title to owning article id. On duplicate titles the
/// lowest article id wins; later articles are excluded from resolution.
pub(crate) struct TitleMap {
    by_title: HashMap<String, String>,
    pub duplicate_titles: u64,
}

impl TitleMap {
    pub(crate) fn build<'a, I>(titles: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>, // (id, title)
    {
        let mut by_title: HashMap<String, String> = HashMap::new();
        let mut duplicate_titles = 0;
        for (id, title) in titles {
            let key = normalize_title(title);
            match by_title.get_mut(&key) {
                Some(existing) => {
                    duplicate_titles += 1;
                    if compare_ids(id, existing) == std::cmp::Ordering::Less {
                        *existing = id.to_string();
                    }
                }
                None => {
                    by_title.insert(key, id.to_string());
                }
            }
        }
        TitleMap {
            by_title,
            duplicate_titles,
        }
    }

    /// Resolve a decoded anchor target: exact match on the normalized
    /// title, then a fallback with the first character's case toggled.
    pub(crate) fn resolve(&self, target: &str) -> Option<&str> {
        let key = normalize_title(target);
        if let Some(id) = self.by_title.get(&key) {
            return Some(id);
        }
        let toggled = toggle_first_char_case(&key)?;
        self.by_title.get(&toggled).map(String::as_str)
    }
}

/// Trim and collapse internal whitespace; link targets and titles must
/// normalize identically for resolution to work.
fn normalize_title(title: &str) -> String {
    title.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn toggle_first_char_case(s: &str) -> Option<String> {
    let first = s.chars().next()?;
    let toggled: String = if first.is_lowercase() {
        first.to_uppercase().collect()
    } else if first.is_uppercase() {
        first.to_lowercase().collect()
    } else {
        return None;
    };
    Some(format!("{}{}", toggled, &s[first.len_utf8()..]))
}

/// Build the link graph for a record set: for each article, anchors in its
/// first sentence are resolved against the title map; unresolved targets
/// are dropped and counted. Articles with an empty body simply have no
/// outgoing edges.
pub fn build_link_graph<I>(records: I) -> TopicLinkGraph
where
    I: IntoIterator<Item = ArticleRecord>,
{
    let records: Vec<ArticleRecord> = records.into_iter().collect();
    let titles = TitleMap::build(records.iter().map(|r| (r.id.as_str(), r.title.as_str())));
    let mut graph = TopicLinkGraph {
        duplicate_titles: titles.duplicate_titles,
        ..TopicLinkGraph::default()
    };
    for record in &records {
        let Ok(fs) = first_sentence(record) else {
            continue;
        };
        add_edges(&mut graph, &titles, &record.id, fs.anchors.iter().map(|a| a.target.as_str()));
    }
    graph
}

/// Resolve `targets` for one source article and add the edges.
pub(crate) fn add_edges<'a, I>(
    graph: &mut TopicLinkGraph,
    titles: &TitleMap,
    source_id: &str,
    targets: I,
) where
    I: IntoIterator<Item = &'a str>,
{
    for target in targets {
        match titles.resolve(target) {
            Some(target_id) => {
                graph
                    .edges
                    .entry(source_id.to_string())
                    .or_default()
                    .insert(target_id.to_string());
            }
            None => graph.unresolved_targets += 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, title: &str, body: &str) -> ArticleRecord {
        ArticleRecord {
            id: id.to_string(),
            url: String::new(),
            title: title.to_string(),
            text: format!("{title}\n\n{body}"),
        }
    }

    #[test]
    fn first_sentence_link_becomes_an_edge() {
        let records = vec![
            record(
                "25",
                "Autism",
                "Autism is a <a href=\"developmental%20disorder\">developmental disorder</a>. More text.",
            ),
            record("30", "Developmental disorder", "A developmental disorder is a condition."),
        ];
        let graph = build_link_graph(records);
        assert!(graph.contains_edge("25", "30"));
        assert_eq!(graph.edge_count(), 1);
        assert_eq!(graph.unresolved_targets, 0);
    }

    #[test]
    fn linkless_first_sentence_has_no_edges() {
        let graph = build_link_graph(vec![record("1", "A", "Plain sentence. Rest.")]);
        assert_eq!(graph.edge_count(), 0);
    }

    #[test]
    fn unresolved_target_is_counted_not_linked() {
        let graph = build_link_graph(vec![record(
            "1",
            "A",
            "Links to <a href=\"Nonexistent%20Page\">nowhere</a>. Rest.",
        )]);
        assert_eq!(graph.edge_count(), 0);
        assert_eq!(graph.unresolved_targets, 1);
    }

    #[test]
    fn links_beyond_the_first_sentence_are_ignored() {
        let records = vec![
            record("1", "A", "First sentence. Then <a href=\"B\">b</a> later."),
            record("2", "B", "Body."),
        ];
        let graph = build_link_graph(records);
        assert_eq!(graph.edge_count(), 0);
    }

    #[test]
    fn first_char_case_fallback_resolves() {
        let records = vec![
            record("1", "A", "See <a href=\"developmental disorder\">this</a>. End."),
            record("2", "Developmental disorder", "Body."),
        ];
        let graph = build_link_graph(records);
        assert!(graph.contains_edge("1", "2"));
    }

    #[test]
    fn duplicate_title_keeps_lowest_id() {
        let records = vec![
            record("9", "Paris", "A city. End."),
            record("2", "Paris", "Another Paris. End."),
            record("3", "B", "About <a href=\"Paris\">it</a>. End."),
        ];
        let graph = build_link_graph(records);
        assert!(graph.contains_edge("3", "2"));
        assert!(!graph.contains_edge("3", "9"));
        assert_eq!(graph.duplicate_titles, 1);
    }
}
