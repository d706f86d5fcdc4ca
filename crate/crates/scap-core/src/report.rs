//! Text reports: the per-dataset performance summary table and the paired
//! significance table.
//!
//! The summary table follows the published layout: one column per data set,
//! percentage rows rendered to one decimal place, and the three comparison
//! rows counting cells where each treatment scored worse than, better than,
//! or the same as the benchmark. The significance table lists the paired
//! mean and standard deviation (two decimals), the one-tailed t-test p-value
//! and the Wilcoxon p-value (four decimals) per benchmark-treatment pair; a
//! pair with zero-variance differences is flagged as degenerate instead of
//! inventing a p-value.

use crate::error::{Error, Result};
use crate::experiment::ComparisonSummary;
use crate::stats::{
    descriptive, paired_t_one_tailed, wilcoxon_signed_rank, Descriptive, PairedSample, TestResult,
};

fn pct(v: f64) -> String {
    format!("{v:.1}%")
}

/// Renders the performance summary block for a benchmark and its treatments.
pub fn render_comparison_table(
    benchmark_name: &str,
    treatments: &[(String, &ComparisonSummary)],
) -> Result<String> {
    let benchmark_stats = treatments
        .first()
        .map(|(_, s)| s.benchmark_stats)
        .ok_or_else(|| Error::Parameter("no treatments to compare".into()))?;

    let labels = [
        "Mean classification accuracy".to_string(),
        "Median classification accuracy".to_string(),
        "Minimum classification accuracy".to_string(),
        "Maximum classification accuracy".to_string(),
        "Std. Deviation".to_string(),
        format!("Worse than {benchmark_name}"),
        format!("Better than {benchmark_name}"),
        format!("Same as {benchmark_name}"),
    ];
    let label_width = labels.iter().map(|l| l.len()).max().unwrap();

    let stat_rows = |d: &Descriptive| {
        vec![
            pct(d.mean),
            pct(d.median),
            pct(d.min),
            pct(d.max),
            d.sd.map(pct).unwrap_or_else(|| "n/a".into()),
        ]
    };

    let mut columns: Vec<(String, Vec<String>)> = Vec::new();
    let mut bench_col = stat_rows(&benchmark_stats);
    bench_col.extend(["".to_string(), "".to_string(), "".to_string()]);
    columns.push((benchmark_name.to_string(), bench_col));
    for (name, summary) in treatments {
        let mut col = stat_rows(&summary.treatment_stats);
        col.push(summary.worse.to_string());
        col.push(summary.better.to_string());
        col.push(summary.same.to_string());
        columns.push((name.clone(), col));
    }

    let widths: Vec<usize> = columns
        .iter()
        .map(|(name, values)| {
            values
                .iter()
                .map(|v| v.len())
                .chain([name.len()])
                .max()
                .unwrap()
        })
        .collect();

    let mut out = String::new();
    out.push_str(&format!("{:label_width$}", ""));
    for ((name, _), width) in columns.iter().zip(&widths) {
        out.push_str(&format!("  {name:>width$}"));
    }
    out.push('\n');
    for (row_idx, label) in labels.iter().enumerate() {
        out.push_str(&format!("{label:<label_width$}"));
        for ((_, values), width) in columns.iter().zip(&widths) {
            out.push_str(&format!("  {:>width$}", values[row_idx]));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    Ok(out)
}

/// One row of the significance table. `t_test`/`wilcoxon` are absent when
/// the paired differences are degenerate (zero variance / all zero).
#[derive(Debug, Clone)]
pub struct SignificanceRow {
    pub pair: String,
    pub mean: f64,
    pub sd: Option<f64>,
    pub t_test: Option<TestResult>,
    pub wilcoxon: Option<TestResult>,
}

/// Computes the significance row for one benchmark-treatment pair from the
/// cell-by-cell accuracy differences.
pub fn significance_row(
    benchmark_name: &str,
    treatment_name: &str,
    summary: &ComparisonSummary,
) -> Result<SignificanceRow> {
    let diffs = PairedSample::new(summary.paired_diffs.clone())?;
    let stats = descriptive(summary.paired_diffs.as_slice())?;
    let t_test = match paired_t_one_tailed(&diffs) {
        Ok(result) => Some(result),
        Err(Error::DegenerateSample(_)) => None,
        Err(e) => return Err(e),
    };
    let wilcoxon = match wilcoxon_signed_rank(&diffs) {
        Ok(result) => Some(result),
        Err(Error::DegenerateSample(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SignificanceRow {
        pair: format!("{benchmark_name}Accuracy - {treatment_name}Accuracy"),
        mean: stats.mean,
        sd: stats.sd,
        t_test,
        wilcoxon,
    })
}

/// Renders the significance table (Mean, Std. Deviation, p-value, plus a
/// Wilcoxon column).
pub fn render_significance_table(rows: &[SignificanceRow]) -> String {
    let pair_width = rows
        .iter()
        .map(|r| r.pair.len())
        .chain(["Pair".len()])
        .max()
        .unwrap();
    let mut out = String::new();
    out.push_str(&format!(
        "{:<pair_width$}  {:>8}  {:>14}  {:>10}  {:>10}\n",
        "Pair", "Mean", "Std. Deviation", "p-value", "Wilcoxon p"
    ));
    for row in rows {
        let sd = row
            .sd
            .map(|v| format!("{v:.2}"))
            .unwrap_or_else(|| "n/a".into());
        let t_p = row
            .t_test
            .map(|t| format!("{:.4}", t.p_value))
            .unwrap_or_else(|| "degenerate".into());
        let w_p = row
            .wilcoxon
            .map(|w| format!("{:.4}", w.p_value))
            .unwrap_or_else(|| "degenerate".into());
        out.push_str(&format!(
            "{:<pair_width$}  {:>8.2}  {:>14}  {:>10}  {:>10}\n",
            row.pair, row.mean, sd, t_p, w_p
        ));
    }
    out.push_str("(p-values are one-tailed in the observed direction of each mean difference)\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    use crate::experiment::{compare_grids, AccuracyGrid, GridCell};

    fn grid(cells_spec: &[(usize, usize, usize, usize)]) -> AccuracyGrid {
        let mut cells = BTreeMap::new();
        for &(n, l, correct, total) in cells_spec {
            cells.insert(
                (n, l),
                GridCell {
                    n,
                    l,
                    correct,
                    total,
                    attributions: Vec::new(),
                },
            );
        }
        AccuracyGrid {
            n_values: cells
                .keys()
                .map(|(n, _)| *n)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect(),
            l_values: cells
                .keys()
                .map(|(_, l)| *l)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect(),
            cells,
        }
    }

    #[test]
    fn comparison_table_has_paper_row_labels() {
        let bench = grid(&[(3, 10, 13, 17), (4, 10, 15, 17)]);
        let treat = grid(&[(3, 10, 12, 17), (4, 10, 15, 17)]);
        let summary = compare_grids(&bench, &treat).unwrap();
        let table =
            render_comparison_table("OSJava", &[("OSClass".to_string(), &summary)]).unwrap();
        for label in [
            "Mean classification accuracy",
            "Median classification accuracy",
            "Minimum classification accuracy",
            "Maximum classification accuracy",
            "Std. Deviation",
            "Worse than OSJava",
            "Better than OSJava",
            "Same as OSJava",
        ] {
            assert!(
                table.contains(label),
                "missing row label {label:?}\n{table}"
            );
        }
        assert!(table.contains("OSJava"));
        assert!(table.contains("OSClass"));
        // one-decimal percentages
        assert!(table.contains("82.4%"), "{table}");
    }

    #[test]
    fn significance_row_and_rendering() {
        let bench = grid(&[(3, 10, 17, 17), (4, 10, 15, 17), (5, 10, 13, 17)]);
        let treat = grid(&[(3, 10, 12, 17), (4, 10, 14, 17), (5, 10, 13, 17)]);
        let summary = compare_grids(&bench, &treat).unwrap();
        let row = significance_row("OSJava", "OSClass", &summary).unwrap();
        assert_eq!(row.pair, "OSJavaAccuracy - OSClassAccuracy");
        assert!(row.t_test.is_some());
        assert!(row.wilcoxon.is_some());
        let table = render_significance_table(&[row]);
        assert!(table.starts_with("Pair"));
        assert!(table.contains("Wilcoxon p"));
    }

    #[test]
    fn degenerate_pair_is_flagged() {
        let bench = grid(&[(3, 10, 13, 17), (4, 10, 15, 17)]);
        let summary = compare_grids(&bench, &bench).unwrap();
        let row = significance_row("OSJava", "OSJava", &summary).unwrap();
        assert!(row.t_test.is_none());
        assert!(row.wilcoxon.is_none());
        let table = render_significance_table(&[row]);
        assert!(table.contains("degenerate"), "{table}");
    }
}
