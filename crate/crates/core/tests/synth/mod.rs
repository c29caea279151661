//! Deterministic synthetic corpora for corpus-scale tests.
//!
//! Everything here is driven by splitmix64 from a caller-supplied seed, so
//! test inputs are reproducible byte for byte. Generated words are
//! consonant-heavy syllable gibberish that cannot collide with the English
//! stopword list.

use wikibench_core::corpus::ArticleRecord;
use wikibench_core::dataset::Document;
use wikibench_core::textproc::CleanText;

pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.f64() < p
    }
}

const SYLLABLES: [&str; 20] = [
    "zak", "vor", "mex", "tuv", "gri", "pel", "dak", "ron", "fim", "lux", "bor", "qun", "yel",
    "hiz", "wab", "cet", "jop", "kud", "nys", "salv",
];

fn make_word(rng: &mut Rng) -> String {
    let syllables = 2 + rng.below(3);
    let mut word = String::new();
    for _ in 0..syllables {
        word.push_str(SYLLABLES[rng.below(SYLLABLES.len())]);
    }
    word
}

/// A vocabulary of distinct gibberish words.
pub fn vocabulary(size: usize, rng: &mut Rng) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let mut words = Vec::with_capacity(size);
    while words.len() < size {
        let mut word = make_word(rng);
        while seen.contains(&word) {
            word.push_str(SYLLABLES[rng.below(SYLLABLES.len())]);
        }
        seen.insert(word.clone());
        words.push(word);
    }
    words
}

/// Head-biased (Zipf-like) draw from the vocabulary.
fn zipfish<'a>(vocab: &'a [String], rng: &mut Rng) -> &'a str {
    let u = rng.f64();
    let idx = ((u * u * u) * vocab.len() as f64) as usize;
    &vocab[idx.min(vocab.len() - 1)]
}

/// Wiki-like articles: short mostly-unique titles, a first sentence that
/// links to a few other articles (with percent-encoded or case-toggled
/// targets mixed in, plus the occasional dead target), and a multi-sentence
/// body.
pub fn wiki_corpus(n: usize, seed: u64) -> Vec<ArticleRecord> {
    let mut rng = Rng::new(seed);
    let vocab = vocabulary(20_000, &mut rng);

    // unique titles, 1-4 words with a Wikipedia-like mean around 2
    let mut titles: Vec<String> = Vec::with_capacity(n);
    let mut seen = std::collections::HashSet::new();
    while titles.len() < n {
        let words = match rng.f64() {
            u if u < 0.35 => 1,
            u if u < 0.75 => 2,
            u if u < 0.93 => 3,
            _ => 4,
        };
        let mut parts: Vec<String> = (0..words).map(|_| zipfish(&vocab, &mut rng).to_string()).collect();
        // capitalize the first word like an article title
        if let Some(first) = parts.first_mut() {
            let mut chars = first.chars();
            if let Some(c) = chars.next() {
                *first = c.to_uppercase().collect::<String>() + chars.as_str();
            }
        }
        let title = parts.join(" ");
        if seen.insert(title.clone()) {
            titles.push(title);
        }
    }

    let sentence_words = |rng: &mut Rng, count: usize| -> Vec<String> {
        (0..count).map(|_| zipfish(&vocab, rng).to_string()).collect()
    };

    (0..n)
        .map(|i| {
            let id = (i + 1).to_string();
            let title = &titles[i];

            // first sentence: title words, filler, and 0..=8 links
            let link_count = rng.below(9);
            let mut sentence = format!("{title} is a");
            let filler_budget = 1 + rng.below(9);
            for w in sentence_words(&mut rng, filler_budget) {
                sentence.push(' ');
                sentence.push_str(&w);
            }
            for _ in 0..link_count {
                let target_idx = rng.below(n);
                let mut target = titles[target_idx].clone();
                if rng.chance(0.05) {
                    target = format!("{target} zzmissing");
                }
                if rng.chance(0.3) {
                    // lowercase first char; resolution falls back on case toggle
                    let mut chars = target.chars();
                    if let Some(c) = chars.next() {
                        target = c.to_lowercase().collect::<String>() + chars.as_str();
                    }
                }
                let text = target.clone();
                if rng.chance(0.5) {
                    target = target.replace(' ', "%20");
                }
                sentence.push_str(&format!(" <a href=\"{target}\">{text}</a>"));
            }
            sentence.push('.');

            // body: more sentences and occasionally a second paragraph
            let mut body = sentence;
            let extra_sentences = 2 + rng.below(6);
            for s in 0..extra_sentences {
                if s == extra_sentences / 2 && rng.chance(0.4) {
                    body.push('\n');
                } else {
                    body.push(' ');
                }
                let count = 8 + rng.below(13);
                let words = sentence_words(&mut rng, count);
                let mut first = true;
                for w in words {
                    if !first {
                        body.push(' ');
                    }
                    let mut w = w;
                    if first {
                        let mut chars = w.chars();
                        if let Some(c) = chars.next() {
                            w = c.to_uppercase().collect::<String>() + chars.as_str();
                        }
                    }
                    body.push_str(&w);
                    first = false;
                }
                body.push('.');
            }

            ArticleRecord {
                id: id.clone(),
                url: format!("synthetic://{id}"),
                title: title.clone(),
                text: format!("{title}\n\n{body}"),
            }
        })
        .collect()
}

pub struct RankingCorpus {
    pub docs: Vec<(String, String)>,
    pub queries: Vec<(String, String)>,
}

/// Raw documents and queries for ranking-oracle comparisons. Documents mix
/// in real stopwords; some queries repeat a token, some target rare or
/// absent terms.
pub fn ranking_corpus(doc_count: usize, query_count: usize, seed: u64) -> RankingCorpus {
    let mut rng = Rng::new(seed);
    let vocab = vocabulary(3_000, &mut rng);
    const STOPS: [&str; 5] = ["the", "of", "and", "in", "to"];

    let docs: Vec<(String, String)> = (0..doc_count)
        .map(|i| {
            let len = 20 + rng.below(81);
            let mut words = Vec::with_capacity(len);
            for _ in 0..len {
                if rng.chance(0.15) {
                    words.push(STOPS[rng.below(STOPS.len())].to_string());
                } else {
                    words.push(zipfish(&vocab, &mut rng).to_string());
                }
            }
            (format!("d{i:04}"), words.join(" "))
        })
        .collect();

    let queries: Vec<(String, String)> = (0..query_count)
        .map(|i| {
            let len = 1 + rng.below(5);
            let mut words: Vec<String> =
                (0..len).map(|_| zipfish(&vocab, &mut rng).to_string()).collect();
            if rng.chance(0.10) {
                let dup = words[rng.below(words.len())].clone();
                words.push(dup);
            }
            if rng.chance(0.05) {
                words.push("zzznotindexed".to_string());
            }
            (format!("q{i:03}"), words.join(" "))
        })
        .collect();

    RankingCorpus { docs, queries }
}

/// Shared vocabulary for the throughput corpus and its queries, so queries
/// actually match indexed terms.
fn perf_vocabulary() -> Vec<String> {
    vocabulary(50_000, &mut Rng::new(0x7E5F_CAB5))
}

/// Stream already-clean documents of roughly `avg_tokens` tokens without
/// materializing the collection.
pub fn streaming_docs(count: usize, avg_tokens: usize, seed: u64) -> impl Iterator<Item = Document> {
    let mut rng = Rng::new(seed);
    let vocab = perf_vocabulary();
    (0..count).map(move |i| {
        let len = avg_tokens / 2 + rng.below(avg_tokens) + 1;
        let mut text = String::with_capacity(len * 8);
        for t in 0..len {
            if t > 0 {
                text.push(' ');
            }
            text.push_str(zipfish(&vocab, &mut rng));
        }
        Document {
            doc_id: format!("d{i:06}"),
            text: CleanText::from_clean(text),
        }
    })
}

/// Short head-biased queries against the same vocabulary as
/// [`streaming_docs`].
pub fn query_set(count: usize, seed: u64) -> Vec<(String, String)> {
    let mut rng = Rng::new(seed);
    let vocab = perf_vocabulary();
    (0..count)
        .map(|i| {
            let len = 2 + rng.below(3);
            let words: Vec<&str> = (0..len).map(|_| zipfish(&vocab, &mut rng)).collect();
            (format!("q{i:04}"), words.join(" "))
        })
        .collect()
}
