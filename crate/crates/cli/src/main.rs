//! Command-line front end: solve a single instance, run benchmark or
//! ablation campaigns from a config file, cluster plain TSP files, and
//! validate instance files.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or data error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use gtsp_core::acs::{self, AcsParams, LocalSearchKind, LocalUpdateDenominator};
use gtsp_core::cluster::cluster_instance;
use gtsp_core::harness::{self, ExperimentConfig};
use gtsp_core::registry::BestKnownRegistry;
use gtsp_core::tour::relative_error;
use gtsp_core::tsplib::{parse_gtsp, parse_tsplib, write_gtsp};

#[derive(Parser)]
#[command(name = "gtsp", version, about = "Ant colony solver for the clustered traveling salesman problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one clustered instance and print the best tour found.
    Solve(SolveArgs),
    /// Run a benchmark campaign described by a config file.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the local-search ablation (full solver vs 3-opt only).
    Ablate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Cluster a plain TSP file into a GTSP instance file.
    Cluster {
        /// TSPLIB file with node coordinates.
        file: PathBuf,
        /// Output path; defaults to <instance-name>.gtsp in the output dir.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parse a TSP or GTSP file and check all structural invariants.
    Validate {
        file: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LocalSearchArg {
    Composite,
    #[value(name = "3opt")]
    ThreeOpt,
    None,
}

impl From<LocalSearchArg> for LocalSearchKind {
    fn from(v: LocalSearchArg) -> Self {
        match v {
            LocalSearchArg::Composite => LocalSearchKind::Composite,
            LocalSearchArg::ThreeOpt => LocalSearchKind::ThreeOptOnly,
            LocalSearchArg::None => LocalSearchKind::None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DenominatorArg {
    N,
    M,
}

#[derive(Args)]
struct SolveArgs {
    /// Clustered instance file (GTSP_SETS + GTSP_SET_SECTION).
    file: PathBuf,
    #[arg(long, default_value_t = 3.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.4)]
    rho: f64,
    #[arg(long, default_value_t = 0.03)]
    xi: f64,
    #[arg(long, default_value_t = 0.0)]
    q0: f64,
    /// Stop after this many iterations without improvement.
    #[arg(long, default_value_t = 300)]
    delta: u64,
    #[arg(long, default_value_t = 10)]
    ants: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = LocalSearchArg::Composite)]
    ls: LocalSearchArg,
    /// Local-update denominator: node count (n) or cluster count (m).
    #[arg(long, value_enum, default_value_t = DenominatorArg::N)]
    denominator: DenominatorArg,
    /// Hard wall-time cap in seconds.
    #[arg(long)]
    max_time: Option<f64>,
    /// Hard iteration cap.
    #[arg(long)]
    max_iterations: Option<u64>,
    /// Write a per-iteration trace (iteration, iteration best, global best,
    /// elapsed ms) to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Bench { config } => bench(&config),
        Command::Ablate { config } => ablate(&config),
        Command::Cluster { file, output } => cluster(&file, output),
        Command::Validate { file } => validate(&file),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn output_dir() -> PathBuf {
    match std::env::var("GTSP_OUT_DIR") {
        Ok(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from("."),
    }
}

fn solve(args: SolveArgs) -> anyhow::Result<()> {
    let instance = parse_gtsp(&read(&args.file)?)?;
    let params = AcsParams {
        beta: args.beta,
        rho: args.rho,
        xi: args.xi,
        q0: args.q0,
        delta: args.delta,
        num_ants: args.ants,
        seed: args.seed,
        local_search: args.ls.into(),
        local_update_denominator: match args.denominator {
            DenominatorArg::N => LocalUpdateDenominator::NodesN,
            DenominatorArg::M => LocalUpdateDenominator::ClustersM,
        },
        max_iterations: args.max_iterations,
        max_time_s: args.max_time,
        record_trace: args.trace.is_some(),
    };
    let result = acs::run(&instance, &params)?;

    println!(
        "instance: {} (n={}, m={})",
        instance.name(),
        instance.n(),
        instance.m()
    );
    println!("weight: {}", result.weight);
    println!("nn_weight: {}", result.nn_weight);
    if let Some(best) = BestKnownRegistry::builtin().lookup(instance.name()) {
        println!("error_pct: {:.2}", relative_error(result.weight, best)?);
    }
    println!("tour: {}", result.tour.canonical_line());
    println!("iterations: {}", result.iterations);
    println!("time_s: {:.3}", result.elapsed.as_secs_f64());
    println!(
        "termination: {}",
        match result.termination {
            acs::Termination::Stagnation => "stagnation",
            acs::Termination::IterationCap => "iteration_cap",
            acs::Termination::TimeCap => "time_cap",
        }
    );

    if let Some(path) = args.trace {
        let mut text = String::new();
        for t in &result.trace {
            text.push_str(&format!(
                "{},{},{},{}\n",
                t.iteration, t.iteration_best, t.global_best, t.elapsed_ms
            ));
        }
        std::fs::write(&path, text)
            .with_context(|| format!("cannot write trace {}", path.display()))?;
    }
    Ok(())
}

fn bench(config_path: &Path) -> anyhow::Result<()> {
    let config = ExperimentConfig::load(config_path)?;
    let (reports, artifacts) = harness::execute_bench(&config)?;
    print!(
        "{}",
        harness::render_report(
            &reports,
            harness::ReportFormat::Markdown,
            harness::load_reference(&config)?.as_ref(),
        )?
    );
    println!();
    println!("wrote {}", artifacts.csv_path.display());
    println!("wrote {}", artifacts.markdown_path.display());
    for path in &artifacts.trace_paths {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn ablate(config_path: &Path) -> anyhow::Result<()> {
    let config = ExperimentConfig::load(config_path)?;
    let (paired, artifacts) = harness::execute_ablation(&config)?;
    print!(
        "{}",
        harness::render_ablation(&paired, harness::ReportFormat::Markdown)?
    );
    println!();
    println!("wrote {}", artifacts.csv_path.display());
    println!("wrote {}", artifacts.markdown_path.display());
    Ok(())
}

fn cluster(file: &Path, output: Option<PathBuf>) -> anyhow::Result<()> {
    let tsp = parse_tsplib(&read(file)?)?;
    let instance = cluster_instance(&tsp)?;
    let text = write_gtsp(instance.name(), &tsp, instance.clusters());
    let path = match output {
        Some(p) => p,
        None => output_dir().join(format!("{}.gtsp", instance.name())),
    };
    std::fs::write(&path, text)
        .with_context(|| format!("cannot write {}", path.display()))?;
    println!(
        "clustered {} nodes into {} sets: {}",
        instance.n(),
        instance.m(),
        path.display()
    );
    Ok(())
}

fn validate(file: &Path) -> anyhow::Result<()> {
    let text = read(file)?;
    let is_clustered = text
        .lines()
        .any(|l| l.trim().to_ascii_uppercase().starts_with("GTSP_SETS"));
    if is_clustered {
        let instance = parse_gtsp(&text)?;
        println!(
            "ok: {} (n={}, m={}, cluster sizes {}..{})",
            instance.name(),
            instance.n(),
            instance.m(),
            instance.smallest_cluster_size(),
            instance.largest_cluster_size()
        );
    } else {
        let tsp = parse_tsplib(&text)?;
        if tsp.n < 2 {
            bail!("instance has fewer than 2 nodes");
        }
        println!(
            "ok: {} (n={}, {}, not clustered)",
            tsp.name,
            tsp.n,
            tsp.weight_kind.keyword()
        );
    }
    Ok(())
}
