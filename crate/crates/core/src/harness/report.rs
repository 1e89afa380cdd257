use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engines::Algorithm;
use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::harness::run::{ResultRow, COLUMNS};

/// Parses a results file. Rows that do not fit the schema are collected
/// and reported together by line number.
pub fn read_results<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().ne(COLUMNS.iter().copied()) {
        let line = headers.position().map_or(1, |p| p.line() as usize);
        return Err(Error::MalformedResults { lines: vec![line] });
    }
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for record in reader.records() {
        match record {
            Ok(record) => match record.deserialize::<ResultRow>(Some(&headers)) {
                Ok(row) => rows.push(row),
                Err(_) => bad.push(record.position().map_or(0, |p| p.line() as usize)),
            },
            Err(e) => bad.push(e.position().map_or(0, |p| p.line() as usize)),
        }
    }
    if bad.is_empty() {
        Ok(rows)
    } else {
        Err(Error::MalformedResults { lines: bad })
    }
}

pub fn read_results_file(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    read_results(std::fs::File::open(path)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: usize,
    pub problem: Problem,
    pub algo: Algorithm,
    pub trials: usize,
    pub feasible_trials: usize,
    pub median_evals_to_feasible: Option<f64>,
    pub mean_evals_to_feasible: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    /// Mean of the per-row bounds.
    pub theo_bound: Option<f64>,
    /// Share of rows with both a ratio and a bound where the ratio is
    /// within the bound.
    pub bound_satisfaction: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingRatio {
    pub n: usize,
    /// `T(2n) / T(n)` on median evaluations to feasibility.
    pub ratio: f64,
    /// `2 ln(2n) / ln n`, the ratio of an exact `n ln n` law.
    pub n_log_n_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub problem: Problem,
    pub algo: Algorithm,
    /// Least-squares `c` in `T(n) = c n ln n`.
    pub c: f64,
    pub points: Vec<(usize, f64)>,
    pub doubling: Vec<DoublingRatio>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub groups: Vec<GroupSummary>,
    pub scaling: Vec<ScalingFit>,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Least-squares `c` for `T = c n ln n` and the ratios between consecutive
/// sizes that differ by a factor of two.
pub fn fit_n_log_n(points: &[(usize, f64)]) -> (f64, Vec<DoublingRatio>) {
    let x = |n: usize| n as f64 * (n as f64).ln();
    let num: f64 = points.iter().map(|&(n, t)| t * x(n)).sum();
    let den: f64 = points.iter().map(|&(n, _)| x(n) * x(n)).sum();
    let c = if den > 0.0 { num / den } else { 0.0 };
    let doubling = points
        .windows(2)
        .filter(|w| w[1].0 == 2 * w[0].0 && w[0].1 > 0.0)
        .map(|w| {
            let n = w[0].0 as f64;
            DoublingRatio {
                n: w[0].0,
                ratio: w[1].1 / w[0].1,
                n_log_n_ratio: 2.0 * (2.0 * n).ln() / n.ln(),
            }
        })
        .collect();
    (c, doubling)
}

/// Aggregates per `(problem, algorithm, n)` plus a scaling fit for every
/// `(problem, algorithm)` seen at two or more sizes. Wall-clock times are
/// ignored.
pub fn summarize(rows: &[ResultRow]) -> SummaryReport {
    let mut groups: BTreeMap<(Problem, Algorithm, usize), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        groups.entry((row.problem, row.algo, row.n)).or_default().push(row);
    }
    let summaries: Vec<GroupSummary> = groups
        .iter()
        .map(|(&(problem, algo, n), rows)| {
            let mut evals: Vec<f64> = rows.iter().filter_map(|r| r.evals_to_feasible).map(|e| e as f64).collect();
            let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
            let bounds: Vec<f64> = rows.iter().filter_map(|r| r.theo_bound).collect();
            let judged: Vec<bool> = rows
                .iter()
                .filter_map(|r| Some(r.ratio? <= r.theo_bound?))
                .collect();
            GroupSummary {
                n,
                problem,
                algo,
                trials: rows.len(),
                feasible_trials: rows.iter().filter(|r| r.best_size.is_some()).count(),
                mean_evals_to_feasible: mean(&evals),
                median_evals_to_feasible: median(&mut evals),
                mean_ratio: mean(&ratios),
                max_ratio: ratios.iter().copied().reduce(f64::max),
                theo_bound: mean(&bounds),
                bound_satisfaction: (!judged.is_empty())
                    .then(|| judged.iter().filter(|&&ok| ok).count() as f64 / judged.len() as f64),
            }
        })
        .collect();

    let mut series: BTreeMap<(Problem, Algorithm), Vec<(usize, f64)>> = BTreeMap::new();
    for g in &summaries {
        if let Some(m) = g.median_evals_to_feasible {
            series.entry((g.problem, g.algo)).or_default().push((g.n, m));
        }
    }
    let scaling = series
        .into_iter()
        .filter(|(_, pts)| pts.len() >= 2)
        .map(|((problem, algo), points)| {
            let (c, doubling) = fit_n_log_n(&points);
            ScalingFit {
                problem,
                algo,
                c,
                points,
                doubling,
            }
        })
        .collect();
    SummaryReport {
        groups: summaries,
        scaling,
    }
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

pub fn render_table(report: &SummaryReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:<6} {:>6} {:>6} {:>8} {:>12} {:>12} {:>8} {:>8} {:>9} {:>7}",
        "problem", "algo", "n", "trials", "feasible", "median_eval", "mean_eval", "mean_r", "max_r", "bound", "within"
    );
    for g in &report.groups {
        let _ = writeln!(
            out,
            "{:<8} {:<6} {:>6} {:>6} {:>8} {:>12} {:>12} {:>8} {:>8} {:>9} {:>7}",
            g.problem.name(),
            g.algo.name(),
            g.n,
            g.trials,
            g.feasible_trials,
            opt(g.median_evals_to_feasible, 1),
            opt(g.mean_evals_to_feasible, 1),
            opt(g.mean_ratio, 4),
            opt(g.max_ratio, 4),
            opt(g.theo_bound, 3),
            opt(g.bound_satisfaction, 3),
        );
    }
    for fit in &report.scaling {
        let _ = writeln!(out, "\nscaling {} {}: T(n) ~ {:.4} n ln n", fit.problem, fit.algo, fit.c);
        for d in &fit.doubling {
            let _ = writeln!(
                out,
                "  T({})/T({}) = {:.4} (n ln n law: {:.4})",
                2 * d.n,
                d.n,
                d.ratio,
                d.n_log_n_ratio
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, evals: u64, ratio: f64) -> ResultRow {
        ResultRow {
            trial: 0,
            seed: 0,
            n,
            m: n,
            beta: Some(2.5),
            t: Some(0.0),
            c1_fitted: Some(1.0),
            problem: Problem::Mds,
            algo: Algorithm::Ea,
            evals_to_feasible: Some(evals),
            evals_total: evals,
            best_size: Some(1),
            reference: Some(1),
            reference_kind: Some(crate::fitness::ReferenceKind::Exact),
            ratio: Some(ratio),
            theo_bound: Some(2.0),
            wall_ms: 1.0,
        }
    }

    #[test]
    fn single_group() {
        let r = summarize(&[row(10, 5, 1.0), row(10, 7, 1.5), row(10, 9, 3.0)]);
        assert_eq!(r.groups.len(), 1);
        let g = &r.groups[0];
        assert_eq!(g.median_evals_to_feasible, Some(7.0));
        assert_eq!(g.max_ratio, Some(3.0));
        assert!((g.bound_satisfaction.unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.scaling.is_empty());
    }

    #[test]
    fn n_log_n_rows_give_the_law_ratio() {
        let pts: Vec<(usize, f64)> = [100usize, 200, 400].iter().map(|&n| (n, n as f64 * (n as f64).ln())).collect();
        let (c, doubling) = fit_n_log_n(&pts);
        assert!((c - 1.0).abs() < 1e-12);
        for d in doubling {
            assert!((d.ratio - d.n_log_n_ratio).abs() < 1e-12);
        }
    }
}
