//! Baseline comparison and LaTeX result tables.

use super::metrics::{METRICS, METRIC_COUNT};
use super::ttest::{bonferroni, paired_ttest};
use super::{EvalError, Evaluation, Metric};

/// Direction of a significant difference against the baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Better,
    Worse,
    None,
}

impl Marker {
    pub fn symbol(&self) -> &'static str {
        match self {
            Marker::Better => "+",
            Marker::Worse => "-",
            Marker::None => "",
        }
    }
}

/// Outcome of one (system, metric) comparison against the baseline.
#[derive(Debug, Clone)]
pub struct SignificanceVerdict {
    pub metric: Metric,
    pub t_statistic: f64,
    pub p_raw: f64,
    /// min(1, m * p_raw) for the configured family size m.
    pub p_corrected: f64,
    pub marker: Marker,
}

/// A named evaluation, one table row.
#[derive(Debug, Clone)]
pub struct SystemEval {
    pub name: String,
    pub evaluation: Evaluation,
}

/// Rendered table plus the per-system verdicts behind its markers.
#[derive(Debug, Clone)]
pub struct LatexTable {
    pub source: String,
    pub verdicts: Vec<(String, Vec<SignificanceVerdict>)>,
}

fn metric_column(eval: &Evaluation, idx: usize) -> Vec<f64> {
    eval.per_query.iter().map(|row| row.values[idx]).collect()
}

fn same_query_sets(a: &Evaluation, b: &Evaluation) -> bool {
    a.per_query.len() == b.per_query.len()
        && a.per_query
            .iter()
            .zip(&b.per_query)
            .all(|(x, y)| x.query_id == y.query_id)
}

/// Compare a system to the baseline on every metric with a two-tailed
/// paired t-test. The marker fires only when the corrected p-value is below
/// `alpha`, pointing in the direction of the mean difference.
pub fn compare_to_baseline(
    system: &Evaluation,
    baseline: &Evaluation,
    alpha: f64,
    family_size: usize,
) -> Result<Vec<SignificanceVerdict>, EvalError> {
    if !same_query_sets(system, baseline) {
        return Err(EvalError::MismatchedQueries);
    }
    let mut verdicts = Vec::with_capacity(METRIC_COUNT);
    for (idx, metric) in METRICS.iter().enumerate() {
        let test = paired_ttest(&metric_column(system, idx), &metric_column(baseline, idx))?;
        let p_corrected = bonferroni(test.p_value, family_size);
        let marker = if p_corrected < alpha && test.mean_difference > 0.0 {
            Marker::Better
        } else if p_corrected < alpha && test.mean_difference < 0.0 {
            Marker::Worse
        } else {
            Marker::None
        };
        verdicts.push(SignificanceVerdict {
            metric: *metric,
            t_statistic: test.t_statistic,
            p_raw: test.p_value,
            p_corrected,
            marker,
        });
    }
    Ok(verdicts)
}

/// Emit a results table: one row per system under the baseline row, eight
/// metric columns, superscript +/- markers for significant differences
/// against the baseline, and the per-column maximum in bold.
///
/// `family_size` defaults to the number of (system, metric) comparisons in
/// this invocation.
pub fn latex_table(
    baseline: &SystemEval,
    systems: &[SystemEval],
    alpha: f64,
    family_size: Option<usize>,
) -> Result<LatexTable, EvalError> {
    let m = family_size.unwrap_or(systems.len() * METRIC_COUNT).max(1);
    let mut verdicts = Vec::with_capacity(systems.len());
    for system in systems {
        verdicts.push((
            system.name.clone(),
            compare_to_baseline(&system.evaluation, &baseline.evaluation, alpha, m)?,
        ));
    }

    // Column maxima across the baseline and every system.
    let mut maxima = baseline.evaluation.means;
    for system in systems {
        for (max, value) in maxima.iter_mut().zip(system.evaluation.means.iter()) {
            if value > max {
                *max = *value;
            }
        }
    }

    let mut out = String::new();
    out.push_str("\\begin{tabular}{lllllllll}\n\\hline\nModel");
    for metric in METRICS {
        out.push_str(" & ");
        out.push_str(&metric.label());
    }
    out.push_str("\\\\\n\\hline\n\\hline\n");
    out.push_str(&render_row(&baseline.name, &baseline.evaluation.means, None, &maxima));
    out.push_str("\\hline\n");
    for (system, (_, system_verdicts)) in systems.iter().zip(&verdicts) {
        out.push_str(&render_row(
            &system.name,
            &system.evaluation.means,
            Some(system_verdicts),
            &maxima,
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");

    Ok(LatexTable {
        source: out,
        verdicts,
    })
}

fn render_row(
    name: &str,
    means: &[f64; METRIC_COUNT],
    verdicts: Option<&Vec<SignificanceVerdict>>,
    maxima: &[f64; METRIC_COUNT],
) -> String {
    let mut row = String::from(name);
    for (idx, value) in means.iter().enumerate() {
        let mut cell = format!("{value:.4}");
        if *value >= maxima[idx] {
            cell = format!("\\textbf{{{cell}}}");
        }
        if let Some(verdicts) = verdicts {
            let marker = verdicts[idx].marker;
            if marker != Marker::None {
                cell.push_str(&format!(
                    "\\textsuperscript{{\\textbf{{{}}}}}",
                    marker.symbol()
                ));
            }
        }
        row.push_str(" & ");
        row.push_str(&cell);
    }
    row.push_str("\\\\\n");
    row
}
