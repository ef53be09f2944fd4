//! Experiment orchestration: repeated seeded runs per instance, error and
//! optimal-hit aggregation against the best-known table, the ablation of the
//! composite local search against 3-opt alone, and report rendering.

pub mod config;
pub mod report;

pub use config::ExperimentConfig;
pub use report::{render_ablation, render_report, ReportFormat};

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::acs::{self, AcsParams, LocalSearchKind, TraceRecord};
use crate::error::{Error, Result};
use crate::instance::GtspInstance;
use crate::registry::{BestKnownRegistry, ReferenceTable};
use crate::tour::relative_error;
use crate::tsplib::parse_gtsp;

/// One seeded run, reduced to what the tables need.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub seed: u64,
    pub weight: i64,
    /// None when the instance has no best-known reference.
    pub error_pct: Option<f64>,
    pub time_s: f64,
    pub iterations: u64,
    /// Weight equals the best known value; None without a reference.
    pub hit: Option<bool>,
    /// Weight beat the best known value (negative error, reported as-is).
    pub improved_best: bool,
    pub trace: Vec<TraceRecord>,
}

/// Aggregated result of all repeats on one instance.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub instance: String,
    pub best_known: Option<i64>,
    pub runs: Vec<RunRecord>,
    pub mean_error: Option<f64>,
    pub mean_time: f64,
    pub optimal_pct: Option<f64>,
    pub config: AcsParams,
}

impl RunReport {
    fn new(
        instance: String,
        best_known: Option<i64>,
        runs: Vec<RunRecord>,
        config: AcsParams,
    ) -> Self {
        let mean_time = runs.iter().map(|r| r.time_s).sum::<f64>() / runs.len() as f64;
        let mean_error = best_known.map(|_| {
            runs.iter().map(|r| r.error_pct.unwrap()).sum::<f64>() / runs.len() as f64
        });
        let optimal_pct = best_known.map(|_| {
            100.0 * runs.iter().filter(|r| r.hit == Some(true)).count() as f64 / runs.len() as f64
        });
        RunReport {
            instance,
            best_known,
            runs,
            mean_error,
            mean_time,
            optimal_pct,
            config,
        }
    }
}

/// Paired reports over identical seeds: composite local search vs 3-opt only.
#[derive(Debug, Clone)]
pub struct AblationReport {
    pub hacs: Vec<RunReport>,
    pub hacs0: Vec<RunReport>,
}

fn single_run(
    instance: &GtspInstance,
    params: &AcsParams,
    seed: u64,
    registry: &BestKnownRegistry,
) -> RunRecord {
    let mut run_params = params.clone();
    run_params.seed = seed;
    let result = acs::run(instance, &run_params).expect("params validated by the caller");
    let best_known = registry.lookup(instance.name());
    let error_pct = best_known
        .map(|best| relative_error(result.weight, best).expect("registry values are positive"));
    RunRecord {
        seed,
        weight: result.weight,
        error_pct,
        time_s: result.elapsed.as_secs_f64(),
        iterations: result.iterations,
        hit: best_known.map(|best| result.weight == best),
        improved_best: best_known.is_some_and(|best| result.weight < best),
        trace: result.trace,
    }
}

/// Runs `f` over `jobs` with at most `workers` threads, preserving job order
/// in the returned vector.
fn run_pool<J: Sync, T: Send>(jobs: &[J], workers: usize, f: impl Fn(&J) -> T + Sync) -> Vec<T> {
    let workers = workers.max(1).min(jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let out = f(&jobs[i]);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

/// Executes `repeats` seeded runs per instance (seeds `params.seed + i`) and
/// aggregates each instance into a report. Instances absent from the
/// registry produce reports without error or optimal columns.
pub fn run_experiment(
    instances: &[GtspInstance],
    params: &AcsParams,
    repeats: usize,
    registry: &BestKnownRegistry,
    workers: usize,
) -> Result<Vec<RunReport>> {
    params.validate()?;
    if repeats == 0 {
        return Err(Error::Config("repeats must be at least 1".into()));
    }
    let jobs: Vec<(usize, u64)> = (0..instances.len())
        .flat_map(|i| (0..repeats as u64).map(move |r| (i, params.seed + r)))
        .collect();
    let records = run_pool(&jobs, workers, |&(i, seed)| {
        single_run(&instances[i], params, seed, registry)
    });

    let mut per_instance: Vec<Vec<RunRecord>> = (0..instances.len()).map(|_| Vec::new()).collect();
    for ((i, _), record) in jobs.into_iter().zip(records) {
        per_instance[i].push(record);
    }
    Ok(per_instance
        .into_iter()
        .zip(instances)
        .map(|(runs, instance)| {
            RunReport::new(
                instance.name().to_string(),
                registry.lookup(instance.name()),
                runs,
                params.clone(),
            )
        })
        .collect())
}

/// Runs the full solver and the 3-opt-only solver over identical seeds.
pub fn ablation(
    instances: &[GtspInstance],
    params: &AcsParams,
    repeats: usize,
    registry: &BestKnownRegistry,
    workers: usize,
) -> Result<AblationReport> {
    let mut full = params.clone();
    full.local_search = LocalSearchKind::Composite;
    let mut reduced = params.clone();
    reduced.local_search = LocalSearchKind::ThreeOptOnly;
    Ok(AblationReport {
        hacs: run_experiment(instances, &full, repeats, registry, workers)?,
        hacs0: run_experiment(instances, &reduced, repeats, registry, workers)?,
    })
}

/// Reads and validates every instance file of a config.
pub fn load_instances(config: &ExperimentConfig) -> Result<Vec<GtspInstance>> {
    config
        .instances
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            parse_gtsp(&text)
        })
        .collect()
}

pub fn load_registry(config: &ExperimentConfig) -> Result<BestKnownRegistry> {
    match &config.best_known {
        Some(path) => BestKnownRegistry::from_csv(&std::fs::read_to_string(path)?),
        None => Ok(BestKnownRegistry::builtin()),
    }
}

pub fn load_reference(config: &ExperimentConfig) -> Result<Option<ReferenceTable>> {
    if !config.include_reference {
        return Ok(None);
    }
    match &config.reference {
        Some(path) => Ok(Some(ReferenceTable::from_csv(&std::fs::read_to_string(
            path,
        )?)?)),
        None => Ok(Some(ReferenceTable::builtin())),
    }
}

/// Files written by a campaign.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub output_dir: PathBuf,
    pub csv_path: PathBuf,
    pub markdown_path: PathBuf,
    pub trace_paths: Vec<PathBuf>,
}

fn write_traces(
    reports: &[RunReport],
    output_dir: &std::path::Path,
) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for report in reports {
        for run in &report.runs {
            if run.trace.is_empty() {
                continue;
            }
            let path = output_dir.join(format!("trace_{}_{}.csv", report.instance, run.seed));
            let mut text = String::new();
            for t in &run.trace {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    t.iteration, t.iteration_best, t.global_best, t.elapsed_ms
                ));
            }
            std::fs::write(&path, text)?;
            paths.push(path);
        }
    }
    Ok(paths)
}

/// Loads everything a config names, runs the experiment and writes
/// `results.csv` and `results.md` (plus traces when enabled).
pub fn execute_bench(config: &ExperimentConfig) -> Result<(Vec<RunReport>, Artifacts)> {
    let mut config = config.clone();
    if config.write_traces {
        config.params.record_trace = true;
    }
    let instances = load_instances(&config)?;
    let registry = load_registry(&config)?;
    let reference = load_reference(&config)?;
    let reports = run_experiment(
        &instances,
        &config.params,
        config.repeats,
        &registry,
        config.workers,
    )?;

    let output_dir = config.resolve_output_dir();
    std::fs::create_dir_all(&output_dir)?;
    let csv_path = output_dir.join("results.csv");
    let markdown_path = output_dir.join("results.md");
    std::fs::write(
        &csv_path,
        render_report(&reports, ReportFormat::Csv, reference.as_ref())?,
    )?;
    std::fs::write(
        &markdown_path,
        render_report(&reports, ReportFormat::Markdown, reference.as_ref())?,
    )?;
    let trace_paths = write_traces(&reports, &output_dir)?;
    Ok((
        reports,
        Artifacts {
            output_dir,
            csv_path,
            markdown_path,
            trace_paths,
        },
    ))
}

/// The ablation analogue of [`execute_bench`]: writes
/// `ablation_hacs.csv`, `ablation_hacs0.csv` and `ablation.md`.
pub fn execute_ablation(config: &ExperimentConfig) -> Result<(AblationReport, Artifacts)> {
    let mut config = config.clone();
    if config.write_traces {
        config.params.record_trace = true;
    }
    let instances = load_instances(&config)?;
    let registry = load_registry(&config)?;
    let paired = ablation(
        &instances,
        &config.params,
        config.repeats,
        &registry,
        config.workers,
    )?;

    let output_dir = config.resolve_output_dir();
    std::fs::create_dir_all(&output_dir)?;
    let csv_path = output_dir.join("ablation_hacs.csv");
    std::fs::write(&csv_path, render_report(&paired.hacs, ReportFormat::Csv, None)?)?;
    std::fs::write(
        output_dir.join("ablation_hacs0.csv"),
        render_report(&paired.hacs0, ReportFormat::Csv, None)?,
    )?;
    let markdown_path = output_dir.join("ablation.md");
    std::fs::write(&markdown_path, render_ablation(&paired, ReportFormat::Markdown)?)?;
    let mut trace_paths = write_traces(&paired.hacs, &output_dir)?;
    trace_paths.extend(write_traces(&paired.hacs0, &output_dir)?);
    Ok((
        paired,
        Artifacts {
            output_dir,
            csv_path,
            markdown_path,
            trace_paths,
        },
    ))
}
