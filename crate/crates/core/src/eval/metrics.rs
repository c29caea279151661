//! Rank-based retrieval metrics over graded judgments.
//!
//! Gains are exponential (2^grade - 1), which rewards retrieving the
//! grade-2 document over grade-1 ones. All values land in [0, 1].

use std::collections::HashMap;

/// The standard report: three precision cutoffs, three nDCG cutoffs,
/// full-depth nDCG, and MAP.
pub const METRICS: [Metric; 8] = [
    Metric::PrecisionAt(5),
    Metric::PrecisionAt(10),
    Metric::PrecisionAt(20),
    Metric::NdcgAt(5),
    Metric::NdcgAt(10),
    Metric::NdcgAt(20),
    Metric::Ndcg,
    Metric::Map,
];

pub const METRIC_COUNT: usize = METRICS.len();

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    PrecisionAt(usize),
    NdcgAt(usize),
    /// nDCG cut at the run depth.
    Ndcg,
    /// Average precision (reported as MAP once averaged over queries).
    Map,
}

impl Metric {
    pub fn label(&self) -> String {
        match self {
            Metric::PrecisionAt(k) => format!("P@{k}"),
            Metric::NdcgAt(k) => format!("nDCG@{k}"),
            Metric::Ndcg => "nDCG".to_string(),
            Metric::Map => "MAP".to_string(),
        }
    }

    /// Position of a standard metric inside [`METRICS`].
    pub fn index_of(metric: Metric) -> usize {
        METRICS
            .iter()
            .position(|m| *m == metric)
            .expect("metric is one of the standard eight")
    }

    pub fn compute(&self, ranked: &[&str], grades: &HashMap<String, u8>) -> f64 {
        match self {
            Metric::PrecisionAt(k) => precision_at_k(ranked, grades, *k),
            Metric::NdcgAt(k) => ndcg_at_k(ranked, grades, *k),
            Metric::Ndcg => ndcg_at_k(ranked, grades, ranked.len()),
            Metric::Map => average_precision(ranked, grades),
        }
    }
}

fn grade_of(grades: &HashMap<String, u8>, doc: &str) -> u8 {
    grades.get(doc).copied().unwrap_or(0)
}

/// Fraction of the top k that is relevant (grade >= 1). The divisor is k
/// even when fewer than k documents were retrieved.
pub fn precision_at_k(ranked: &[&str], grades: &HashMap<String, u8>, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let hits = ranked
        .iter()
        .take(k)
        .filter(|d| grade_of(grades, d) >= 1)
        .count();
    hits as f64 / k as f64
}

fn dcg<I: IntoIterator<Item = u8>>(grade_seq: I) -> f64 {
    grade_seq
        .into_iter()
        .enumerate()
        .map(|(i, g)| (f64::from(2u32.pow(u32::from(g))) - 1.0) / ((i as f64) + 2.0).log2())
        .sum()
}

/// nDCG at cutoff k: DCG over the top k of the ranking divided by the DCG
/// of all judged documents sorted by grade, truncated at k. Returns 0 when
/// the ideal is empty (no relevant documents, or k = 0).
pub fn ndcg_at_k(ranked: &[&str], grades: &HashMap<String, u8>, k: usize) -> f64 {
    let mut ideal: Vec<u8> = grades.values().copied().filter(|g| *g > 0).collect();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    ideal.truncate(k);
    let idcg = dcg(ideal);
    if idcg == 0.0 {
        return 0.0;
    }
    let gains = ranked.iter().take(k).map(|d| grade_of(grades, d));
    dcg(gains) / idcg
}

/// Average precision: mean of P@i over the ranks i holding a relevant
/// document, divided by the total number of relevant documents in the
/// qrels (retrieved or not).
pub fn average_precision(ranked: &[&str], grades: &HashMap<String, u8>) -> f64 {
    let total_relevant = grades.values().filter(|g| **g >= 1).count();
    if total_relevant == 0 {
        return 0.0;
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, doc) in ranked.iter().enumerate() {
        if grade_of(grades, doc) >= 1 {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    sum / total_relevant as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grades(pairs: &[(&str, u8)]) -> HashMap<String, u8> {
        pairs.iter().map(|(d, g)| (d.to_string(), *g)).collect()
    }

    #[test]
    fn precision_counts_relevant_in_top_k() {
        let g = grades(&[("d1", 2), ("d2", 1)]);
        assert!((precision_at_k(&["d1", "x", "d2", "y", "z"], &g, 5) - 0.4).abs() < 1e-12);
        assert_eq!(precision_at_k(&["x", "y"], &g, 5), 0.0);
    }

    #[test]
    fn precision_divisor_stays_k_for_short_runs() {
        let g = grades(&[("d1", 1), ("d2", 1), ("d3", 1)]);
        assert!((precision_at_k(&["d1", "d2", "d3"], &g, 5) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn perfect_ordering_has_ndcg_one() {
        let g = grades(&[("d1", 2), ("d2", 1)]);
        assert!((ndcg_at_k(&["d1", "d2"], &g, 10) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ndcg_hand_computed_example() {
        // grades in rank order [1, 2, 0], ideal [2, 1]
        // DCG = 1 + 3/log2(3); IDCG = 3 + 1/log2(3)
        let g = grades(&[("a", 1), ("b", 2)]);
        let value = ndcg_at_k(&["a", "b", "c"], &g, 3);
        let dcg = 1.0 + 3.0 / 3.0f64.log2();
        let idcg = 3.0 + 1.0 / 3.0f64.log2();
        assert!((dcg - 2.892_789).abs() < 1e-6);
        assert!((idcg - 3.630_930).abs() < 1e-6);
        assert!((value - dcg / idcg).abs() < 1e-12);
        assert!((value - 0.796_707).abs() < 1e-6);
    }

    #[test]
    fn empty_run_has_ndcg_zero() {
        let g = grades(&[("d1", 2)]);
        assert_eq!(ndcg_at_k(&[], &g, 10), 0.0);
        assert_eq!(ndcg_at_k(&[], &g, 0), 0.0);
    }

    #[test]
    fn ap_single_relevant_at_rank_one() {
        let g = grades(&[("d1", 2)]);
        assert!((average_precision(&["d1", "x"], &g) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ap_hand_computed_example() {
        // relevant at ranks 1 and 3, R = 2 -> (1 + 2/3) / 2
        let g = grades(&[("a", 1), ("b", 1)]);
        let value = average_precision(&["a", "x", "b"], &g);
        assert!((value - (1.0 + 2.0 / 3.0) / 2.0).abs() < 1e-12);
        assert!((value - 0.833_333).abs() < 1e-6);
    }

    #[test]
    fn ap_zero_when_relevant_never_retrieved() {
        let g = grades(&[("d1", 1)]);
        assert_eq!(average_precision(&["x", "y"], &g), 0.0);
    }

    #[test]
    fn unretrieved_relevant_still_counts_in_ap_divisor() {
        let g = grades(&[("a", 1), ("b", 1)]);
        // only one of two relevant docs retrieved, at rank 1
        assert!((average_precision(&["a"], &g) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn metrics_are_invariant_below_the_cutoff() {
        let g = grades(&[("a", 2), ("b", 1)]);
        let one = ["a", "b", "x", "y", "z", "p", "q"];
        let two = ["a", "b", "x", "y", "z", "q", "p"];
        assert_eq!(precision_at_k(&one, &g, 5), precision_at_k(&two, &g, 5));
        assert_eq!(ndcg_at_k(&one, &g, 5), ndcg_at_k(&two, &g, 5));
    }

    #[test]
    fn all_values_stay_in_unit_interval() {
        let g = grades(&[("a", 2), ("b", 1), ("c", 1)]);
        let ranked = ["x", "a", "y", "c", "b", "z"];
        for metric in METRICS {
            let v = metric.compute(&ranked, &g);
            assert!((0.0..=1.0).contains(&v), "{} out of range: {v}", metric.label());
        }
    }
}
