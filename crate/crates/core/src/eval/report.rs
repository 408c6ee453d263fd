//! CSV and aligned-text renderings of an [`EvalReport`].
//!
//! Numbers in the CSV use Rust's shortest round-trip decimal form; the text
//! table rounds to four decimals. Both outputs depend only on the report.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::eval::grid::{rank_methods, EvalReport, Metric};

pub const CSV_HEADER: [&str; 7] = ["dataset", "method", "metric", "mean", "std", "best_k", "best_p"];

/// One line per (dataset, method, metric), then one `rank` line per
/// (method, metric) with the mean rank in the `mean` column.
pub fn to_csv(report: &EvalReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Data(format!("writing report CSV: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in &report.rows {
        let best_k = row.best_k.map(|k| k.to_string()).unwrap_or_default();
        let best_p = row.best_p.map(|p| p.to_string()).unwrap_or_default();
        for (metric, mean, std) in [
            (Metric::F1, row.f1_mean, row.f1_std),
            (Metric::Mcc, row.mcc_mean, row.mcc_std),
        ] {
            w.write_record([
                row.dataset.as_str(),
                row.method.name(),
                metric.name(),
                &mean.to_string(),
                &std.to_string(),
                &best_k,
                &best_p,
            ])
            .map_err(io)?;
        }
    }
    for metric in [Metric::F1, Metric::Mcc] {
        for (method, rank) in rank_methods(report, metric)? {
            w.write_record(["rank", method.name(), metric.name(), &rank.to_string(), "", "", ""])
                .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Data(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn table(report: &EvalReport, metric: Metric, out: &mut String) -> Result<()> {
    let name_width = report
        .datasets
        .iter()
        .map(String::len)
        .chain(["dataset".len(), "rank".len()])
        .max()
        .unwrap_or(7);
    let col = |m: &str| m.len().max(10);
    let _ = write!(out, "{:<name_width$}", "dataset");
    for m in &report.methods {
        let _ = write!(out, "  {:>w$}", m.name(), w = col(m.name()));
    }
    out.push('\n');
    for dataset in &report.datasets {
        let _ = write!(out, "{dataset:<name_width$}");
        for &m in &report.methods {
            let cell = report
                .score(dataset, m, metric)
                .map(|s| format!("{s:.4}"))
                .unwrap_or_else(|| "-".into());
            let _ = write!(out, "  {:>w$}", cell, w = col(m.name()));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:<name_width$}", "rank");
    for (m, r) in rank_methods(report, metric)? {
        let _ = write!(out, "  {:>w$}", format!("{r:.4}"), w = col(m.name()));
    }
    out.push('\n');
    Ok(())
}

/// Aligned F1 and MCC tables with rank rows, the chosen hyperparameters and
/// any per-fold diagnostics.
pub fn to_text(report: &EvalReport) -> Result<String> {
    let mut out = String::new();
    let meta = &report.meta;
    let _ = writeln!(
        out,
        "# classifier={} k_clf={} vote_tie={} cv={}x{} seed={} symmetrize={} selection={}",
        meta.classifier,
        meta.k_clf,
        meta.vote_tie,
        meta.repeats,
        meta.folds,
        meta.seed,
        meta.symmetrize.as_str(),
        meta.selection
    );
    out.push_str("\nF1\n");
    table(report, Metric::F1, &mut out)?;
    out.push_str("\nMCC\n");
    table(report, Metric::Mcc, &mut out)?;

    out.push_str("\nselected hyperparameters\n");
    for row in &report.rows {
        if row.best_k.is_some() || row.best_p.is_some() {
            let _ = write!(out, "{} {}:", row.dataset, row.method);
            if let Some(k) = row.best_k {
                let _ = write!(out, " k={k}");
            }
            if let Some(p) = row.best_p {
                let _ = write!(out, " p={p}");
            }
            out.push('\n');
        }
    }
    let diagnostics: Vec<&String> = report.rows.iter().flat_map(|r| &r.diagnostics).collect();
    if !diagnostics.is_empty() {
        out.push_str("\ndiagnostics\n");
        for d in diagnostics {
            let _ = writeln!(out, "{d}");
        }
    }
    Ok(out)
}
