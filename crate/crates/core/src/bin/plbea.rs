use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plbea::engines::{Algorithm, RunBudget};
use plbea::error::{Error, Result};
use plbea::fitness::Problem;
use plbea::generators::{generate_document, load_graph, GenSpec, GraphModel};
use plbea::harness::{self, ExperimentConfig};
use plbea::oracles;
use plbea::plb::plb_report;

#[derive(Parser)]
#[command(name = "plbea", version, about = "Evolutionary algorithms on power-law bounded graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as JSON.
    Gen(GenArgs),
    /// Fit c1 and check the power-law bucket bounds.
    CheckPlb(CheckPlbArgs),
    /// Run a batch of seeded trials and write a results CSV.
    Run(RunArgs),
    /// Exact, greedy or bounding reference solutions.
    Oracle(OracleArgs),
    /// Measure the drift of the penalty term during the infeasible phase.
    Drift(DriftArgs),
    /// Summarise one or more results files.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: GraphModel,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    attach_m: usize,
    #[arg(long, default_value_t = 2.5)]
    beta_target: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Input file for the edge-list model.
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec {
            model: self.model,
            n: self.n,
            attach_m: self.attach_m,
            beta_target: self.beta_target,
            seed: self.seed,
            path: self.path.clone(),
        }
    }
}

#[derive(Args)]
struct CheckPlbArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    t: f64,
    /// Check against this c1 instead of the fitted one.
    #[arg(long)]
    c1: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment config. Other flags are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    graph: GraphFlags,
    #[arg(long)]
    problem: Option<Problem>,
    #[arg(long)]
    algo: Option<Algorithm>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_evals: Option<u64>,
    /// Stop a trial once a feasible solution of this size is held.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    exact_limit: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to PLBEA_WORKERS or the core count.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct GraphFlags {
    /// Graph file (JSON or edge list) instead of a generated graph.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pa")]
    model: GraphModel,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    attach_m: usize,
    #[arg(long, default_value_t = 2.5)]
    beta_target: f64,
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
}

impl GraphFlags {
    fn spec(&self) -> GenSpec {
        match &self.graph {
            Some(path) => GenSpec::edge_list(path),
            None => GenSpec {
                model: self.model,
                n: self.n,
                attach_m: self.attach_m,
                beta_target: self.beta_target,
                seed: self.graph_seed,
                path: None,
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMethodArg {
    Exact,
    Greedy,
    Bounds,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    problem: Problem,
    #[arg(long, value_enum, default_value = "exact")]
    method: OracleMethodArg,
    /// Largest graph the exact solver accepts; defaults to PLBEA_EXACT_LIMIT or 26.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Args)]
struct DriftArgs {
    #[command(flatten)]
    graph: GraphFlags,
    #[arg(long, default_value = "mds")]
    problem: Problem,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, required = true)]
    results: Vec<PathBuf>,
    /// Write the JSON summary here; the table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of the table.
    #[arg(long)]
    json: bool,
}

fn workers(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("PLBEA_WORKERS").ok()?.parse().ok())
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let doc = generate_document(&args.spec())?;
    emit(args.out.as_ref(), &(doc.to_json() + "\n"))
}

fn cmd_check_plb(args: CheckPlbArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    emit(None, &json(&plb_report(&g, args.beta, args.t, args.c1)?))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => {
            let problem = args.problem.ok_or_else(|| Error::Usage("--problem is required".into()))?;
            let algorithm = args.algo.ok_or_else(|| Error::Usage("--algo is required".into()))?;
            let mut cfg = ExperimentConfig::new(args.graph.spec(), problem, algorithm, args.trials);
            cfg.base_seed = args.seed;
            cfg.exact_limit = args.exact_limit;
            cfg.output = args.out.clone();
            if args.max_evals.is_some() || args.target.is_some() {
                let g = plbea::generators::generate(&cfg.graph)?;
                let mut budget = args
                    .max_evals
                    .map_or_else(|| RunBudget::default_for(g.n(), problem, algorithm), RunBudget::evaluations);
                budget.target = args.target;
                cfg.budget = Some(budget);
            }
            cfg
        }
    };
    let output = harness::cmd_run(&cfg, workers(args.workers))?;
    if cfg.output.is_none() {
        emit(None, &output.csv)?;
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let limit = args.limit.unwrap_or_else(oracles::exact_limit_from_env);
    let text = match args.method {
        OracleMethodArg::Exact => json(&oracles::exact_solve(&g, args.problem, limit)?),
        OracleMethodArg::Greedy => json(&oracles::greedy(&g, args.problem)?),
        OracleMethodArg::Bounds => json(&oracles::size_bounds(&g, args.problem)?),
    };
    emit(None, &text)
}

fn cmd_drift(args: DriftArgs) -> Result<()> {
    let g = plbea::generators::generate(&args.graph.spec())?;
    let run = || harness::measure_drift(&g, args.problem, args.trials, args.seed);
    let report = match workers(args.workers) {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    emit(None, &json(&report))
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    let mut rows = Vec::new();
    for path in &args.results {
        rows.extend(harness::read_results_file(path)?);
    }
    let report = harness::summarize(&rows);
    if let Some(path) = &args.out {
        std::fs::write(path, json(&report))?;
    }
    if args.json {
        emit(None, &json(&report))
    } else {
        emit(None, &harness::render_table(&report))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::CheckPlb(a) => cmd_check_plb(a),
        Command::Run(a) => cmd_run(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Drift(a) => cmd_drift(a),
        Command::Report(a) => cmd_report(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plbea: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
