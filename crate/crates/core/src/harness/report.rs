//! Report rendering: machine CSV and human Markdown, mirroring the usual
//! benchmark table layout (per-instance rows, averages at the bottom,
//! optional published reference columns, best value per ablation pair
//! underlined).

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::{AblationReport, RunReport};
use crate::registry::ReferenceTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::Config(format!(
                "unknown report format {other:?} (expected csv or md)"
            ))),
        }
    }
}

fn fmt_opt(value: Option<f64>, decimals: usize, missing: &str) -> String {
    match value {
        Some(v) => format!("{v:.decimals$}"),
        None => missing.to_string(),
    }
}

fn mean_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let present: Vec<f64> = values.flatten().collect();
    if present.is_empty() {
        None
    } else {
        Some(present.iter().sum::<f64>() / present.len() as f64)
    }
}

struct Row {
    instance: String,
    best: Option<i64>,
    error: Option<f64>,
    time: Option<f64>,
    optimal: Option<f64>,
    improved: bool,
    reference: [Option<f64>; 3], // sg, baf, ppc errors
}

fn collect_rows(reports: &[RunReport], reference: Option<&ReferenceTable>) -> Vec<Row> {
    let mut rows: Vec<Row> = reports
        .iter()
        .map(|r| {
            let entry = reference.and_then(|t| t.get(&r.instance));
            Row {
                instance: r.instance.clone(),
                best: r.best_known,
                error: r.mean_error,
                time: Some(r.mean_time),
                optimal: r.optimal_pct,
                improved: r.runs.iter().any(|run| run.improved_best),
                reference: [
                    entry.and_then(|e| e.sg_error),
                    entry.and_then(|e| e.baf_error),
                    entry.and_then(|e| e.ppc_error),
                ],
            }
        })
        .collect();
    let average = Row {
        instance: "average".into(),
        best: None,
        error: mean_of(rows.iter().map(|r| r.error)),
        time: mean_of(rows.iter().map(|r| r.time)),
        optimal: mean_of(rows.iter().map(|r| r.optimal)),
        improved: false,
        reference: [
            mean_of(rows.iter().map(|r| r.reference[0])),
            mean_of(rows.iter().map(|r| r.reference[1])),
            mean_of(rows.iter().map(|r| r.reference[2])),
        ],
    };
    rows.push(average);
    rows
}

/// Renders per-instance reports. With a reference table, the published
/// errors of SG, BAF and PPC appear as display-only columns.
pub fn render_report(
    reports: &[RunReport],
    format: ReportFormat,
    reference: Option<&ReferenceTable>,
) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Config("nothing to render: no reports".into()));
    }
    let rows = collect_rows(reports, reference);
    let with_reference = reference.is_some();
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("instance,best,error_pct,time_s,optimal_pct");
            if with_reference {
                out.push_str(",sg_error,baf_error,ppc_error");
            }
            out.push('\n');
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{}",
                    row.instance,
                    row.best.map_or(String::new(), |b| b.to_string()),
                    fmt_opt(row.error, 2, ""),
                    fmt_opt(row.time, 2, ""),
                    fmt_opt(row.optimal, 0, ""),
                ));
                if with_reference {
                    out.push_str(&format!(
                        ",{},{},{}",
                        fmt_opt(row.reference[0], 2, ""),
                        fmt_opt(row.reference[1], 2, ""),
                        fmt_opt(row.reference[2], 2, ""),
                    ));
                }
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            out.push_str("| Instance | Best | Error % | Time s | Optimal % |");
            if with_reference {
                out.push_str(" SG err % | BAF err % | PPC err % |");
            }
            out.push('\n');
            out.push_str("|---|---:|---:|---:|---:|");
            if with_reference {
                out.push_str("---:|---:|---:|");
            }
            out.push('\n');
            for row in &rows {
                let name = if row.instance == "average" {
                    "**Average**".to_string()
                } else if row.improved {
                    format!("{} (improved best)", row.instance)
                } else {
                    row.instance.clone()
                };
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |",
                    name,
                    row.best.map_or("n/a".to_string(), |b| b.to_string()),
                    fmt_opt(row.error, 2, "no reference"),
                    fmt_opt(row.time, 2, "n/a"),
                    fmt_opt(row.optimal, 0, "no reference"),
                ));
                if with_reference {
                    out.push_str(&format!(
                        " {} | {} | {} |",
                        fmt_opt(row.reference[0], 2, "n/a"),
                        fmt_opt(row.reference[1], 2, "n/a"),
                        fmt_opt(row.reference[2], 2, "n/a"),
                    ));
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Lower is better for errors and times, higher for optimal percentages;
/// the winner of each pair is underlined, both on a tie.
fn underline_pair(a: Option<f64>, b: Option<f64>, higher_wins: bool, decimals: usize) -> (String, String) {
    let fa = fmt_opt(a, decimals, "no reference");
    let fb = fmt_opt(b, decimals, "no reference");
    match (a, b) {
        (Some(x), Some(y)) => {
            let a_wins = if higher_wins { x >= y } else { x <= y };
            let b_wins = if higher_wins { y >= x } else { y <= x };
            (
                if a_wins { format!("<u>{fa}</u>") } else { fa },
                if b_wins { format!("<u>{fb}</u>") } else { fb },
            )
        }
        _ => (fa, fb),
    }
}

/// Renders the paired comparison of the composite solver against the
/// 3-opt-only ablation. CSV emits both halves in long form.
pub fn render_ablation(paired: &AblationReport, format: ReportFormat) -> Result<String> {
    if paired.hacs.len() != paired.hacs0.len() || paired.hacs.is_empty() {
        return Err(Error::Config("ablation halves are empty or misaligned".into()));
    }
    let full = collect_rows(&paired.hacs, None);
    let reduced = collect_rows(&paired.hacs0, None);
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(
                "instance,best,hacs_error_pct,hacs0_error_pct,hacs_time_s,hacs0_time_s,hacs_optimal_pct,hacs0_optimal_pct\n",
            );
            for (a, b) in full.iter().zip(&reduced) {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    a.instance,
                    a.best.map_or(String::new(), |v| v.to_string()),
                    fmt_opt(a.error, 2, ""),
                    fmt_opt(b.error, 2, ""),
                    fmt_opt(a.time, 2, ""),
                    fmt_opt(b.time, 2, ""),
                    fmt_opt(a.optimal, 0, ""),
                    fmt_opt(b.optimal, 0, ""),
                ));
            }
        }
        ReportFormat::Markdown => {
            out.push_str(
                "| Instance | Best | Error % full | Error % 3-opt | Time s full | Time s 3-opt | Optimal % full | Optimal % 3-opt |\n",
            );
            out.push_str("|---|---:|---:|---:|---:|---:|---:|---:|\n");
            for (a, b) in full.iter().zip(&reduced) {
                let name = if a.instance == "average" {
                    "**Average**".to_string()
                } else {
                    a.instance.clone()
                };
                let (e_a, e_b) = underline_pair(a.error, b.error, false, 2);
                let (t_a, t_b) = underline_pair(a.time, b.time, false, 2);
                let (o_a, o_b) = underline_pair(a.optimal, b.optimal, true, 0);
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    name,
                    a.best.map_or("n/a".to_string(), |v| v.to_string()),
                    e_a,
                    e_b,
                    t_a,
                    t_b,
                    o_a,
                    o_b,
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::AcsParams;
    use crate::harness::RunRecord;

    fn report(instance: &str, best: Option<i64>, weights: &[i64]) -> RunReport {
        let runs: Vec<RunRecord> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| RunRecord {
                seed: i as u64,
                weight: w,
                error_pct: best.map(|b| 100.0 * (w - b) as f64 / b as f64),
                time_s: 0.5,
                iterations: 10,
                hit: best.map(|b| w == b),
                improved_best: best.is_some_and(|b| w < b),
                trace: Vec::new(),
            })
            .collect();
        let mean_error = best
            .map(|_| runs.iter().map(|r| r.error_pct.unwrap()).sum::<f64>() / runs.len() as f64);
        let optimal_pct = best.map(|_| {
            100.0 * runs.iter().filter(|r| r.hit == Some(true)).count() as f64 / runs.len() as f64
        });
        RunReport {
            instance: instance.into(),
            best_known: best,
            mean_time: 0.5,
            mean_error,
            optimal_pct,
            runs,
            config: AcsParams::default(),
        }
    }

    #[test]
    fn exact_hit_renders_zero_error_and_full_optimal() {
        let r = report("40d198", Some(10557), &[10557]);
        let csv = render_report(&[r], ReportFormat::Csv, None).unwrap();
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(line, "40d198,10557,0.00,0.50,100");
    }

    #[test]
    fn reference_columns_show_published_errors() {
        let r = report("40d198", Some(10557), &[10557]);
        let table = ReferenceTable::builtin();
        let md = render_report(&[r], ReportFormat::Markdown, Some(&table)).unwrap();
        let line = md.lines().nth(2).unwrap();
        assert!(line.contains("| 0.00 | 0.00 | 0.01 |"), "{line}");
    }

    #[test]
    fn markdown_average_matches_csv_recomputation() {
        let reports = vec![
            report("a", Some(100), &[100, 102]),
            report("b", Some(200), &[202, 206]),
        ];
        let csv = render_report(&reports, ReportFormat::Csv, None).unwrap();
        let md = render_report(&reports, ReportFormat::Markdown, None).unwrap();

        let mut csv_errors = Vec::new();
        for line in csv.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields[0] != "average" {
                csv_errors.push(fields[2].parse::<f64>().unwrap());
            }
        }
        let recomputed = csv_errors.iter().sum::<f64>() / csv_errors.len() as f64;
        let avg_line = md.lines().last().unwrap();
        let rendered: f64 = avg_line.split('|').nth(3).unwrap().trim().parse().unwrap();
        assert!((rendered - recomputed).abs() <= 0.005 + 1e-12);
    }

    #[test]
    fn missing_reference_is_marked() {
        let r = report("mystery", None, &[123]);
        let md = render_report(&[r], ReportFormat::Markdown, None).unwrap();
        assert!(md.contains("no reference"));
        let missing = render_report(&[], ReportFormat::Csv, None);
        assert!(missing.is_err());
    }

    #[test]
    fn improved_best_is_flagged_not_clamped() {
        let r = report("lucky", Some(100), &[90]);
        assert!(r.runs[0].improved_best);
        let md = render_report(&[r], ReportFormat::Markdown, None).unwrap();
        assert!(md.contains("(improved best)"));
        assert!(md.contains("-10.00"));
    }

    #[test]
    fn ablation_underlines_the_winner() {
        let paired = AblationReport {
            hacs: vec![report("x", Some(100), &[100])],
            hacs0: vec![report("x", Some(100), &[103])],
        };
        let md = render_ablation(&paired, ReportFormat::Markdown).unwrap();
        let row = md.lines().nth(2).unwrap();
        assert!(row.contains("<u>0.00</u>"), "{row}");
        assert!(row.contains("| 3.00 |"), "{row}");
        assert!(row.contains("<u>100</u>"), "{row}");
    }

    #[test]
    fn format_strings_parse() {
        assert!(matches!("csv".parse::<ReportFormat>(), Ok(ReportFormat::Csv)));
        assert!(matches!("md".parse::<ReportFormat>(), Ok(ReportFormat::Markdown)));
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
