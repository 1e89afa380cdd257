use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::engines::{run_trials, Algorithm, RunBudget, TrialRecord};
use crate::error::Result;
use crate::fitness::{approx_ratio, Problem, ReferenceKind, Sense};
use crate::generators::generate;
use crate::graph::Graph;
use crate::harness::config::{ExperimentConfig, PlbChoice};
use crate::oracles::{exact_limit_from_env, exact_solve, size_bounds};
use crate::plb::{fit_c1, ratio_bounds, PlbParams, RatioBounds};
use crate::rng::GENERATOR_ID;

/// One results-file row. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub beta: Option<f64>,
    pub t: Option<f64>,
    pub c1_fitted: Option<f64>,
    pub problem: Problem,
    pub algo: Algorithm,
    pub evals_to_feasible: Option<u64>,
    pub evals_total: u64,
    pub best_size: Option<usize>,
    pub reference: Option<usize>,
    pub reference_kind: Option<ReferenceKind>,
    pub ratio: Option<f64>,
    pub theo_bound: Option<f64>,
    pub wall_ms: f64,
}

pub const COLUMNS: [&str; 17] = [
    "trial",
    "seed",
    "n",
    "m",
    "beta",
    "t",
    "c1_fitted",
    "problem",
    "algo",
    "evals_to_feasible",
    "evals_total",
    "best_size",
    "reference",
    "reference_kind",
    "ratio",
    "theo_bound",
    "wall_ms",
];

/// The ratio bound that applies to `algorithm` on `problem`. The EA bound
/// for CDS carries the additive 1 that its derivation produces.
pub fn theoretical_bound(bounds: &RatioBounds, problem: Problem, algorithm: Algorithm) -> f64 {
    match (problem.feasibility_class(), algorithm) {
        (Problem::Mds, Algorithm::Ea) => bounds.mds_ea,
        (Problem::Mds, Algorithm::Gsemo) => bounds.mds_gsemo,
        (Problem::Mvc, Algorithm::Ea) => bounds.mvc_ea,
        (Problem::Mvc, Algorithm::Gsemo) => bounds.mvc_gsemo,
        (Problem::Cds, Algorithm::Ea) => bounds.cds_ea + 1.0,
        (Problem::Cds, Algorithm::Gsemo) => bounds.cds_gsemo,
        (Problem::Mis, Algorithm::Ea) => bounds.mis_ea,
        (Problem::Mis, Algorithm::Gsemo) => bounds.mis_gsemo,
        (Problem::MvcDom, _) => unreachable!("folded into Mvc"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlbSelection {
    pub beta: f64,
    pub t: f64,
    pub c1_fitted: f64,
    pub bound: Option<f64>,
}

/// Fits `c1` for every candidate and keeps the one with the smallest
/// bound. Candidates with `beta <= 2` only qualify when nothing else does.
pub fn select_plb(
    g: &Graph,
    problem: Problem,
    algorithm: Algorithm,
    grid: &[PlbChoice],
) -> Result<Option<PlbSelection>> {
    if g.m() == 0 {
        return Ok(None);
    }
    let mut best: Option<PlbSelection> = None;
    for choice in grid {
        let c1_fitted = fit_c1(g, choice.beta, choice.t)?;
        let bound = if choice.beta > 2.0 {
            let params = PlbParams::new(choice.beta, choice.t, c1_fitted)?;
            Some(theoretical_bound(&ratio_bounds(&params)?, problem, algorithm))
        } else {
            None
        };
        let candidate = PlbSelection {
            beta: choice.beta,
            t: choice.t,
            c1_fitted,
            bound,
        };
        let better = match (&best, bound) {
            (None, _) => true,
            (Some(cur), Some(b)) => cur.bound.is_none_or(|c| b < c),
            (Some(_), None) => false,
        };
        if better {
            best = Some(candidate);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub size: usize,
    pub kind: ReferenceKind,
}

/// Exact optimum when `n <= limit`, otherwise the bound on the favourable
/// side: the lower bound when minimising, the upper bound when maximising.
pub fn reference_size(g: &Graph, problem: Problem, limit: usize) -> Result<Reference> {
    if g.n() <= limit {
        let r = exact_solve(g, problem, limit)?;
        return Ok(Reference {
            size: r.optimum_size,
            kind: ReferenceKind::Exact,
        });
    }
    let bounds = size_bounds(g, problem)?;
    Ok(match problem.sense() {
        Sense::Minimize => Reference {
            size: bounds.lower,
            kind: ReferenceKind::LowerBound,
        },
        Sense::Maximize => Reference {
            size: bounds.upper,
            kind: ReferenceKind::UpperBound,
        },
    })
}

/// Rows for a finished batch of trials on `g`.
pub fn result_rows(
    g: &Graph,
    records: &[TrialRecord],
    reference: Option<Reference>,
    selection: Option<PlbSelection>,
) -> Result<Vec<ResultRow>> {
    records
        .iter()
        .enumerate()
        .map(|(trial, rec)| {
            let ratio = match (rec.best_feasible_size, reference) {
                (Some(best), Some(r)) if best > 0 && r.size > 0 => {
                    Some(approx_ratio(best, r.size, rec.problem, r.kind)?.ratio)
                }
                _ => None,
            };
            Ok(ResultRow {
                trial,
                seed: rec.seed,
                n: g.n(),
                m: g.m(),
                beta: selection.map(|s| s.beta),
                t: selection.map(|s| s.t),
                c1_fitted: selection.map(|s| s.c1_fitted),
                problem: rec.problem,
                algo: rec.algorithm,
                evals_to_feasible: rec.evals_to_feasible,
                evals_total: rec.evals_total,
                best_size: rec.best_feasible_size,
                reference: reference.map(|r| r.size),
                reference_kind: reference.map(|r| r.kind),
                ratio,
                theo_bound: selection.and_then(|s| s.bound),
                wall_ms: rec.wall_time_ms,
            })
        })
        .collect()
}

/// Comment lines that start every results file.
pub fn results_header(cfg: &ExperimentConfig) -> String {
    format!(
        "# config-sha256: {}\n# generator-id: {}\n# config: {}\n",
        cfg.hash(),
        GENERATOR_ID,
        cfg.to_json()
    )
}

pub fn write_results<W: Write>(out: W, header: &str, rows: &[ResultRow]) -> Result<()> {
    let mut out = out;
    out.write_all(header.as_bytes())?;
    let mut writer = csv::Writer::from_writer(out);
    if rows.is_empty() {
        writer.write_record(COLUMNS)?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub rows: Vec<ResultRow>,
    pub records: Vec<TrialRecord>,
    /// The complete results file.
    pub csv: String,
}

/// Generates the graph, runs all trials, attaches reference sizes and
/// bounds, and writes the results file to `cfg.output` when set. The
/// output does not depend on `workers`.
pub fn cmd_run(cfg: &ExperimentConfig, workers: Option<usize>) -> Result<RunOutput> {
    cfg.validate()?;
    let g = generate(&cfg.graph)?;
    let budget = cfg
        .budget
        .unwrap_or_else(|| RunBudget::default_for(g.n(), cfg.problem, cfg.algorithm));
    let records = run_trials(&g, cfg.problem, cfg.algorithm, &budget, &cfg.seeds(), workers)?;
    let limit = cfg.exact_limit.unwrap_or_else(exact_limit_from_env);
    let reference = (g.n() > 0)
        .then(|| reference_size(&g, cfg.problem, limit))
        .transpose()?;
    let selection = select_plb(&g, cfg.problem, cfg.algorithm, &cfg.plb)?;
    let rows = result_rows(&g, &records, reference, selection)?;
    let mut buf = Vec::new();
    write_results(&mut buf, &results_header(cfg), &rows)?;
    let csv = String::from_utf8(buf).expect("csv output is utf-8");
    if let Some(path) = &cfg.output {
        std::fs::write(path, &csv)?;
    }
    Ok(RunOutput { rows, records, csv })
}
