//! Acceptance suite. Each test covers one release criterion at its stated
//! tolerance and prints one PASS line (visible with --nocapture); a FAILED
//! test is a failed criterion. Criteria needing the published clustered
//! benchmark files run only when those files are present (see
//! data/instances/README.md) and otherwise report the documented fallback.

mod common;

use std::time::Instant;

use common::{
    chi2_crit_99, load_benchmark, product_minimum, random_feasible_tour, three_opt_neighbors,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gtsp_core::acs::{self, AcsParams, Ant, LocalSearchKind, PheromoneState};
use gtsp_core::brute::{brute_force_optimum, brute_force_optimum_dp, DEFAULT_ENUMERATION_BUDGET};
use gtsp_core::harness::{self, RunReport};
use gtsp_core::instance::GtspInstance;
use gtsp_core::local_search::{co_optimize, improve, three_opt};
use gtsp_core::registry::BestKnownRegistry;
use gtsp_core::synth::{random_instance, SynthSpec};
use gtsp_core::tour::{tour_weight, Tour};

/// Instances reported as 100% optimal, with their best values and published
/// per-run times in seconds; the time column bounds criterion 3's runs.
const SPOT_INSTANCES: [(&str, i64, f64); 7] = [
    ("40d198", 10557, 2.74),
    ("46pr226", 64007, 2.29),
    ("53pr264", 29549, 3.83),
    ("64lin318", 20765, 4.87),
    ("84fl417", 9651, 7.22),
    ("88pr439", 60099, 10.06),
    ("131p654", 27428, 18.57),
];

/// The subset with proven optima (m <= 89) used by criterion 4.
const SMALL_SUBSET: [&str; 13] = [
    "40d198", "40kroa200", "40krob200", "45ts225", "46pr226", "53gil262", "53pr264", "60pr299",
    "64lin318", "80rd400", "84fl417", "88pr439", "89pcb442",
];

#[test]
fn criterion_1_co_oracle_equivalence() {
    let started = Instant::now();
    let count = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0);
    for i in 0..count {
        let m = 3 + (i % 6); // m in [3, 8]
        let instance = random_instance(&SynthSpec::new(m, (1, 4), (1, 100)), 30_000 + i as u64);
        let start = random_feasible_tour(&instance, &mut rng);
        let optimized = co_optimize(&instance, &start).unwrap();
        let oracle = product_minimum(&instance, &start);
        assert_eq!(
            optimized.weight(),
            oracle,
            "instance {i}: CO disagrees with exhaustive product enumeration"
        );
        assert!(optimized.weight() <= start.weight());
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "CO oracle suite took {elapsed:?}, cap is 10 s"
    );
    println!(
        "criterion 1: PASS - co_optimize exact on {count} random instances in {elapsed:.2?}"
    );
}

#[test]
fn criterion_2_end_to_end_exactness_at_oracle_scale() {
    let started = Instant::now();
    let instances = 50;
    let runs_per_instance = 2;
    let mut hits = 0;
    let mut total = 0;
    for i in 0..instances {
        let m = 4 + (i % 4); // m in [4, 7]
        let instance = random_instance(&SynthSpec::new(m, (1, 3), (1, 100)), 31_000 + i as u64);
        let optimum = brute_force_optimum(&instance, DEFAULT_ENUMERATION_BUDGET).unwrap();
        for rep in 0..runs_per_instance {
            let mut params = AcsParams::default();
            params.seed = (100 * i + rep) as u64;
            let result = acs::run(&instance, &params).unwrap();
            assert!(result.weight >= optimum.weight(), "solver beat the optimum");
            total += 1;
            if result.weight == optimum.weight() {
                hits += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    let pct = 100.0 * hits as f64 / total as f64;
    assert!(
        pct >= 95.0,
        "only {hits}/{total} runs matched the brute-force optimum"
    );
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "oracle-scale suite took {elapsed:?}, cap is 2 min"
    );
    println!(
        "criterion 2: PASS - optimum hit in {hits}/{total} runs ({pct:.0}%) in {elapsed:.2?}"
    );
}

#[test]
fn criterion_3_benchmark_spot_reproduction() {
    let mut checked = Vec::new();
    let mut missing = Vec::new();
    for (name, best, paper_time_s) in SPOT_INSTANCES {
        let Some(instance) = load_benchmark(name) else {
            missing.push(name);
            continue;
        };
        let mut hits = 0;
        for seed in 1..=10u64 {
            let mut params = AcsParams::default();
            params.seed = seed;
            params.max_time_s = Some(10.0 * paper_time_s);
            let result = acs::run(&instance, &params).unwrap();
            if result.weight == best {
                hits += 1;
            }
        }
        assert!(
            hits >= 8,
            "{name}: best value {best} reached in only {hits}/10 runs"
        );
        checked.push(format!("{name} {hits}/10"));
    }
    if checked.is_empty() {
        println!(
            "criterion 3: SKIP - published benchmark files not present under {} \
             (place the clustered .gtsp files there to enable this check)",
            common::instance_dir().display()
        );
    } else {
        println!(
            "criterion 3: PASS - best value reached in >= 8/10 runs on: {}{}",
            checked.join(", "),
            if missing.is_empty() {
                String::new()
            } else {
                format!(" (files missing for: {})", missing.join(", "))
            }
        );
    }
}

#[test]
fn criterion_4_aggregate_quality_on_the_small_subset() {
    let instances: Vec<GtspInstance> = SMALL_SUBSET
        .iter()
        .filter_map(|name| load_benchmark(name))
        .collect();
    if instances.len() < SMALL_SUBSET.len() {
        println!(
            "criterion 4: SKIP - {}/{} benchmark files present; per the stated fallback this \
             criterion is replaced by criteria 2 and 5, which run in this same suite",
            instances.len(),
            SMALL_SUBSET.len()
        );
        return;
    }
    let registry = BestKnownRegistry::builtin();
    let mut params = AcsParams::default();
    params.seed = 1;
    let reports = harness::run_experiment(&instances, &params, 10, &registry, 1).unwrap();
    let mean: f64 = reports.iter().map(|r| r.mean_error.unwrap()).sum::<f64>()
        / reports.len() as f64;
    assert!(
        mean <= 0.5,
        "mean error over the m <= 89 subset is {mean:.3}%, cap is 0.5%"
    );
    println!("criterion 4: PASS - mean error {mean:.3}% over the m <= 89 subset");
}

fn pooled_stats(reports: &[RunReport]) -> (f64, f64) {
    let mut errors = Vec::new();
    let mut hits = 0usize;
    let mut total = 0usize;
    for report in reports {
        for run in &report.runs {
            errors.push(run.error_pct.expect("oracle registry covers all instances"));
            total += 1;
            if run.hit == Some(true) {
                hits += 1;
            }
        }
    }
    (
        errors.iter().sum::<f64>() / errors.len() as f64,
        100.0 * hits as f64 / total as f64,
    )
}

#[test]
fn criterion_5_ablation_direction() {
    // Oracle-scale instances where node choice genuinely matters: nine
    // clusters of 4-6 nodes, wide random distances.
    let mut instances = Vec::new();
    let mut registry = BestKnownRegistry::builtin();
    for i in 0..25u64 {
        let instance = random_instance(&SynthSpec::new(9, (4, 6), (1, 10_000)), 32_000 + i);
        let optimum = brute_force_optimum_dp(&instance, DEFAULT_ENUMERATION_BUDGET).unwrap();
        registry.insert(instance.name(), optimum.weight());
        instances.push(instance);
    }
    // Plus whichever small published instances are on disk.
    let mut benchmark_names = Vec::new();
    for name in ["40d198", "46pr226"] {
        if let Some(instance) = load_benchmark(name) {
            benchmark_names.push(name);
            instances.push(instance);
        }
    }

    let mut params = AcsParams::default();
    params.seed = 7;
    let paired = harness::ablation(&instances, &params, 2, &registry, 1).unwrap();
    let (full_err, full_hit) = pooled_stats(&paired.hacs);
    let (reduced_err, reduced_hit) = pooled_stats(&paired.hacs0);
    assert!(
        full_err < reduced_err,
        "composite error {full_err:.3}% not below 3-opt-only error {reduced_err:.3}%"
    );
    assert!(
        full_hit > reduced_hit,
        "composite hit rate {full_hit:.1}% not above 3-opt-only {reduced_hit:.1}%"
    );
    println!(
        "criterion 5: PASS - error {full_err:.2}% vs {reduced_err:.2}%, optimal {full_hit:.0}% vs \
         {reduced_hit:.0}% over {} instances{}",
        instances.len(),
        if benchmark_names.is_empty() {
            String::new()
        } else {
            format!(" (including {})", benchmark_names.join(", "))
        }
    );
}

/// One selection setup: an ant at node 0, every other node a candidate in a
/// second cluster, pheromone and distances chosen by the caller.
fn sampling_fixture(taus: &[f64], dists: &[u32], beta: f64) -> (GtspInstance, PheromoneState, AcsParams) {
    let k = taus.len();
    let n = k + 1;
    let mut matrix = vec![1u32; n * n];
    for i in 0..n {
        matrix[i * n + i] = 0;
    }
    for (j, &d) in dists.iter().enumerate() {
        matrix[j + 1] = d;
        matrix[(j + 1) * n] = d;
    }
    let clusters = vec![vec![0], (1..n).collect::<Vec<_>>()];
    let instance = GtspInstance::new(format!("sample{k}"), clusters, matrix).unwrap();
    let mut pheromone = PheromoneState::new(&instance, 1.0);
    for (j, &t) in taus.iter().enumerate() {
        pheromone.set(0, j + 1, t);
    }
    let mut params = AcsParams::default();
    params.beta = beta;
    (instance, pheromone, params)
}

#[test]
fn criterion_6_selection_sampling_matches_the_probability_rule() {
    let draws = 100_000usize;
    let mut config_rng = ChaCha8Rng::seed_from_u64(0x5e1ec7);
    let mut descriptions = Vec::new();

    for config in 0..10 {
        // First config is the canonical a = (1, 2, 7) arrangement; the rest
        // randomize pheromone (and, for half of them, distances under the
        // default beta).
        let (taus, dists, beta): (Vec<f64>, Vec<u32>, f64) = if config == 0 {
            (vec![1.0, 2.0, 7.0], vec![1, 1, 1], 0.0)
        } else if config < 5 {
            let k = [4, 6, 9, 12][config - 1];
            let taus = (0..k).map(|_| config_rng.gen_range(0.5..2.0)).collect();
            (taus, vec![1; k], 0.0)
        } else {
            let k = [3, 5, 7, 10, 11][config - 5];
            let taus = (0..k).map(|_| config_rng.gen_range(0.5..2.0)).collect();
            let dists = (0..k).map(|_| config_rng.gen_range(5..=15)).collect();
            (taus, dists, 3.0)
        };
        let k = taus.len();
        let (instance, pheromone, params) = sampling_fixture(&taus, &dists, beta);
        let ant = Ant::new(&instance, 0);

        // Expected probabilities, computed here from the raw definition.
        let attractiveness: Vec<f64> = taus
            .iter()
            .zip(&dists)
            .map(|(&t, &d)| t * (1.0 / d as f64).powi(beta as i32))
            .collect();
        let total: f64 = attractiveness.iter().sum();
        let expected: Vec<f64> = attractiveness.iter().map(|a| draws as f64 * a / total).collect();
        assert!(
            expected.iter().all(|&e| e >= 10.0),
            "fixture too skewed for a chi-squared test"
        );

        let mut rng = ChaCha8Rng::seed_from_u64(900 + config as u64);
        let mut observed = vec![0usize; k];
        for _ in 0..draws {
            let node = acs::select_next(&instance, &pheromone, &params, &ant, &mut rng);
            observed[node - 1] += 1;
        }
        let statistic: f64 = observed
            .iter()
            .zip(&expected)
            .map(|(&o, &e)| {
                let diff = o as f64 - e;
                diff * diff / e
            })
            .sum();
        let critical = chi2_crit_99(k - 1);
        assert!(
            statistic < critical,
            "config {config}: chi-squared {statistic:.2} >= {critical:.2} (df {})",
            k - 1
        );
        descriptions.push(format!("{statistic:.1}/{critical:.1}"));

        if config == 0 {
            // The canonical case must sit near (0.1, 0.2, 0.7).
            let freq: Vec<f64> = observed.iter().map(|&o| o as f64 / draws as f64).collect();
            assert!((freq[0] - 0.1).abs() < 0.01);
            assert!((freq[1] - 0.2).abs() < 0.01);
            assert!((freq[2] - 0.7).abs() < 0.01);
        }
    }
    println!(
        "criterion 6: PASS - 10 configurations within the 99% chi-squared band ({})",
        descriptions.join(", ")
    );
}

fn uniform_instance(m: usize, per_cluster: usize, d: u32) -> GtspInstance {
    let n = m * per_cluster;
    let mut matrix = vec![d; n * n];
    for i in 0..n {
        matrix[i * n + i] = 0;
    }
    let clusters = (0..m)
        .map(|c| (c * per_cluster..(c + 1) * per_cluster).collect())
        .collect();
    GtspInstance::new(format!("uniform{m}x{per_cluster}"), clusters, matrix).unwrap()
}

#[test]
fn criterion_7_update_arithmetic_to_full_precision() {
    // Local update: tau = 0.1, xi = 0.03, n = 10, w(T_nn) = 100 -> 0.09703.
    let instance = uniform_instance(5, 2, 20);
    let params = AcsParams::default();
    let (mut pheromone, state) = acs::init(&instance, &params);
    assert_eq!(state.t_nn.weight(), 100);
    pheromone.set(0, 2, 0.1);
    acs::local_update(&mut pheromone, 0, 2, &params, &instance, &state);
    let local_expected = (1.0 - 0.03) * 0.1 + 0.03 / (10.0 * 100.0);
    assert_eq!(pheromone.get(0, 2), local_expected, "local update drifted");
    assert_eq!(pheromone.get(2, 0), local_expected, "local update asymmetric");
    assert!((pheromone.get(0, 2) - 0.09703).abs() < 1e-15);

    // Global update: tau = 0.1, rho = 0.4, w(T_best) = 50 -> 0.068.
    let instance = uniform_instance(5, 1, 10);
    let (mut pheromone, state) = acs::init(&instance, &params);
    assert_eq!(state.best.weight(), 50);
    let edge = (state.best.nodes()[0], state.best.nodes()[1]);
    pheromone.set(edge.0, edge.1, 0.1);
    acs::global_update(&mut pheromone, &state.best, &params);
    let global_expected = (1.0 - 0.4) * 0.1 + 0.4 / 50.0;
    assert_eq!(pheromone.get(edge.0, edge.1), global_expected);
    assert!((pheromone.get(edge.0, edge.1) - 0.068).abs() < 1e-15);

    println!(
        "criterion 7: PASS - local update {} and global update {} reproduce the hand-computed values",
        pheromone_display(local_expected),
        pheromone_display(global_expected)
    );
}

fn pheromone_display(v: f64) -> String {
    format!("{v:.5}")
}

#[test]
fn criterion_8_seeded_runs_are_byte_identical() {
    let mut checked = Vec::new();
    let mut targets: Vec<GtspInstance> = vec![
        random_instance(&SynthSpec::new(7, (2, 4), (1, 500)), 33_000),
        random_instance(&SynthSpec::new(5, (1, 3), (1, 100)), 33_001),
    ];
    if let Some(instance) = load_benchmark("40d198") {
        targets.push(instance);
    }
    for instance in &targets {
        let mut params = AcsParams::default();
        params.seed = 12_345;
        let first = acs::run(instance, &params).unwrap();
        let second = acs::run(instance, &params).unwrap();
        assert_eq!(
            first.tour.canonical_line().into_bytes(),
            second.tour.canonical_line().into_bytes(),
            "{}: canonical tours differ",
            instance.name()
        );
        assert_eq!(first.iterations, second.iterations);
        assert_eq!(first.weight, second.weight);
        checked.push(instance.name().to_string());
    }
    println!(
        "criterion 8: PASS - byte-identical canonical tours and iteration counts on {}",
        checked.join(", ")
    );
}

#[test]
fn criterion_9_invariant_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1f);
    let mut pheromone_checks = 0;
    let mut feasibility_checks = 0;
    let mut monotonicity_checks = 0;
    let mut local_optimality_moves = 0;

    for trial in 0..6u64 {
        let m = 4 + (trial as usize * 2) % 9; // 4..=12
        let instance = random_instance(&SynthSpec::new(m, (1, 3), (1, 200)), 34_000 + trial);
        let params = AcsParams::default();
        let (mut pheromone, mut state) = acs::init(&instance, &params);
        let mut run_rng = ChaCha8Rng::seed_from_u64(trial);

        for _ in 0..8 {
            let tours =
                acs::construct_all(&instance, &mut pheromone, &params, &mut state, &mut run_rng);
            for tour in &tours {
                // Feasibility: full revalidation of every constructed tour.
                Tour::new(&instance, tour.nodes().to_vec()).unwrap();
                feasibility_checks += 1;

                // Monotonicity along the improvement chain.
                let after_three = three_opt(&instance, tour);
                let after_full = improve(&instance, tour);
                assert!(after_three.weight() <= tour.weight());
                assert!(after_full.weight() <= after_three.weight());
                monotonicity_checks += 1;

                if state.best.weight() > after_full.weight() {
                    state.best = after_full;
                }
            }
            acs::global_update(&mut pheromone, &state.best, &params);
            pheromone.check(&instance).unwrap();
            pheromone_checks += 1;
        }

        // 3-opt local optimality via full move enumeration (m <= 12).
        let out = three_opt(&instance, &random_feasible_tour(&instance, &mut rng));
        for candidate in three_opt_neighbors(out.nodes()) {
            assert!(
                tour_weight(&instance, &candidate).unwrap() >= out.weight(),
                "improving 3-opt move missed on m = {m}"
            );
            local_optimality_moves += 1;
        }
    }

    // Also run the full solver once in each mode to sweep its assertions.
    let instance = random_instance(&SynthSpec::new(8, (2, 3), (1, 300)), 35_000);
    for kind in [
        LocalSearchKind::Composite,
        LocalSearchKind::ThreeOptOnly,
        LocalSearchKind::None,
    ] {
        let mut params = AcsParams::default();
        params.delta = 60;
        params.local_search = kind;
        let result = acs::run(&instance, &params).unwrap();
        assert_eq!(
            result.weight,
            tour_weight(&instance, result.tour.nodes()).unwrap()
        );
    }

    println!(
        "criterion 9: PASS - {pheromone_checks} pheromone scans, {feasibility_checks} tour \
         revalidations, {monotonicity_checks} monotonicity checks, {local_optimality_moves} \
         enumerated 3-opt moves, zero violations"
    );
}
