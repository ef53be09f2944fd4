//! The solver loop: ants construct tours under the pseudo-random
//! proportional rule with interleaved local pheromone updates, every tour is
//! improved by the configured local search, the best tour deposits pheromone
//! globally, and the run stops once the best has not moved for a full
//! stagnation window.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acs::params::{AcsParams, LocalSearchKind, LocalUpdateDenominator};
use crate::acs::pheromone::PheromoneState;
use crate::error::Result;
use crate::instance::GtspInstance;
use crate::local_search;
use crate::nn::nearest_neighbor;
use crate::tour::Tour;

/// Visibility guard for co-located nodes: eta = 1 / max(d, epsilon).
const ZERO_DISTANCE_EPSILON: f64 = 1e-6;

/// A partially constructed tour.
#[derive(Debug, Clone)]
pub struct Ant {
    pub path: Vec<usize>,
    pub visited_clusters: Vec<bool>,
    pub current: usize,
}

impl Ant {
    pub fn new(instance: &GtspInstance, start: usize) -> Self {
        let mut visited_clusters = vec![false; instance.m()];
        visited_clusters[instance.cluster_of(start)] = true;
        Ant {
            path: vec![start],
            visited_clusters,
            current: start,
        }
    }

    fn visit(&mut self, instance: &GtspInstance, node: usize) {
        debug_assert!(!self.visited_clusters[instance.cluster_of(node)]);
        self.visited_clusters[instance.cluster_of(node)] = true;
        self.path.push(node);
        self.current = node;
    }
}

/// Attractiveness of one candidate node: visibility `eta = 1/d`, score
/// `a = tau * eta^beta`, and the normalized selection probability.
#[derive(Debug, Clone, Copy)]
pub struct CandidateScore {
    pub node: usize,
    pub eta: f64,
    pub a: f64,
    pub p: f64,
}

/// Scores for every node the ant may still visit, in ascending node order.
pub fn candidate_scores(
    instance: &GtspInstance,
    pheromone: &PheromoneState,
    params: &AcsParams,
    ant: &Ant,
) -> Vec<CandidateScore> {
    let mut scores = Vec::new();
    let mut sum = 0.0;
    for v in 0..instance.n() {
        if ant.visited_clusters[instance.cluster_of(v)] {
            continue;
        }
        let d = instance.dist(ant.current, v) as f64;
        let eta = 1.0 / d.max(ZERO_DISTANCE_EPSILON);
        let a = pheromone.get(ant.current, v) * eta.powf(params.beta);
        sum += a;
        scores.push(CandidateScore {
            node: v,
            eta,
            a,
            p: 0.0,
        });
    }
    if sum > 0.0 {
        for s in &mut scores {
            s.p = s.a / sum;
        }
    } else if !scores.is_empty() {
        // All scores underflowed; fall back to a uniform draw.
        let p = 1.0 / scores.len() as f64;
        for s in &mut scores {
            s.p = p;
        }
    }
    scores
}

fn select_next_inner(
    instance: &GtspInstance,
    pheromone: &PheromoneState,
    params: &AcsParams,
    ant: &Ant,
    rng: &mut ChaCha8Rng,
) -> (usize, bool) {
    let scores = candidate_scores(instance, pheromone, params, ant);
    assert!(
        !scores.is_empty(),
        "select_next called with every cluster already visited"
    );
    let r: f64 = rng.gen();
    if r < params.q0 {
        // Exploitation: argmax of a, ties to the lowest node id.
        let mut best = &scores[0];
        for s in &scores[1..] {
            if s.a > best.a {
                best = s;
            }
        }
        (best.node, true)
    } else {
        let wheel: f64 = rng.gen();
        let mut cum = 0.0;
        for s in &scores {
            cum += s.p;
            if wheel < cum {
                return (s.node, false);
            }
        }
        (scores.last().unwrap().node, false)
    }
}

/// Picks the ant's next node: with probability `q0` the attractiveness
/// argmax, otherwise a draw proportional to the scores.
pub fn select_next(
    instance: &GtspInstance,
    pheromone: &PheromoneState,
    params: &AcsParams,
    ant: &Ant,
    rng: &mut ChaCha8Rng,
) -> usize {
    select_next_inner(instance, pheromone, params, ant, rng).0
}

/// Selection branch counters, mostly for verifying the q0 contract.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub argmax_selections: u64,
    pub roulette_selections: u64,
}

/// One entry of the optional per-iteration trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub iteration: u64,
    pub iteration_best: i64,
    pub global_best: i64,
    pub elapsed_ms: u64,
}

/// Mutable search state threaded through one run.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub best: Tour,
    pub t_nn: Tour,
    pub iteration: u64,
    pub stagnation: u64,
    pub history: Vec<TraceRecord>,
    pub stats: RunStats,
}

/// Builds the initial pheromone state and search state: the best tour starts
/// as the Nearest Neighbor tour and every edge gets
/// `tau0 = num_ants / w(T_nn)`.
pub fn init(instance: &GtspInstance, params: &AcsParams) -> (PheromoneState, SearchState) {
    let t_nn = nearest_neighbor(instance);
    let tau0 = params.num_ants as f64 / t_nn.weight().max(1) as f64;
    let pheromone = PheromoneState::new(instance, tau0);
    let state = SearchState {
        best: t_nn.clone(),
        t_nn,
        iteration: 0,
        stagnation: 0,
        history: Vec::new(),
        stats: RunStats::default(),
    };
    (pheromone, state)
}

/// Local pheromone update on a traversed edge:
/// `tau <- (1 - xi) * tau + xi / (denominator * w(T_nn))`, both orientations.
pub fn local_update(
    pheromone: &mut PheromoneState,
    u: usize,
    v: usize,
    params: &AcsParams,
    instance: &GtspInstance,
    state: &SearchState,
) {
    let denominator = match params.local_update_denominator {
        LocalUpdateDenominator::NodesN => instance.n(),
        LocalUpdateDenominator::ClustersM => instance.m(),
    } as f64;
    let deposit = 1.0 / (denominator * state.t_nn.weight().max(1) as f64);
    pheromone.blend(u, v, params.xi, deposit);
}

/// Global pheromone update: exactly the edges of `best` (closing edge
/// included) move toward `1 / w(best)` at rate `rho`.
pub fn global_update(pheromone: &mut PheromoneState, best: &Tour, params: &AcsParams) {
    let deposit = 1.0 / best.weight().max(1) as f64;
    let nodes = best.nodes();
    for i in 0..nodes.len() {
        let u = nodes[i];
        let v = nodes[(i + 1) % nodes.len()];
        pheromone.blend(u, v, params.rho, deposit);
    }
}

/// Constructs one tour per ant. Each ant starts at an independently uniform
/// random node and takes m-1 selection steps; every traversed edge (closing
/// edge included) receives a local update as soon as it is walked. Ants run
/// sequentially, so earlier ants' updates steer later ants.
pub fn construct_all(
    instance: &GtspInstance,
    pheromone: &mut PheromoneState,
    params: &AcsParams,
    state: &mut SearchState,
    rng: &mut ChaCha8Rng,
) -> Vec<Tour> {
    let mut tours = Vec::with_capacity(params.num_ants);
    for _ in 0..params.num_ants {
        let start = rng.gen_range(0..instance.n());
        let mut ant = Ant::new(instance, start);
        for _ in 1..instance.m() {
            let (node, took_argmax) = select_next_inner(instance, pheromone, params, &ant, rng);
            if took_argmax {
                state.stats.argmax_selections += 1;
            } else {
                state.stats.roulette_selections += 1;
            }
            let from = ant.current;
            ant.visit(instance, node);
            local_update(pheromone, from, node, params, instance, state);
        }
        local_update(pheromone, ant.current, ant.path[0], params, instance, state);
        tours.push(Tour::from_feasible(instance, ant.path));
    }
    tours
}

fn improve_tour(instance: &GtspInstance, tour: &Tour, kind: LocalSearchKind) -> Tour {
    match kind {
        LocalSearchKind::Composite => local_search::improve(instance, tour),
        LocalSearchKind::ThreeOptOnly => local_search::three_opt(instance, tour),
        LocalSearchKind::None => tour.clone(),
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The stagnation window elapsed without improvement.
    Stagnation,
    IterationCap,
    TimeCap,
}

impl Termination {
    pub fn by_cap(&self) -> bool {
        !matches!(self, Termination::Stagnation)
    }
}

/// Outcome of one run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub tour: Tour,
    pub weight: i64,
    pub iterations: u64,
    pub elapsed: Duration,
    pub termination: Termination,
    pub nn_weight: i64,
    pub trace: Vec<TraceRecord>,
    pub stats: RunStats,
}

/// Runs the solver to termination on one instance. Identical
/// (instance, params) inputs replay identically: a single seeded generator
/// drives ant starts and selection draws, and nothing else is random.
pub fn run(instance: &GtspInstance, params: &AcsParams) -> Result<RunResult> {
    params.validate()?;
    let started = Instant::now();
    let (mut pheromone, mut state) = init(instance, params);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let termination = loop {
        if state.stagnation >= params.delta {
            break Termination::Stagnation;
        }
        if params.max_iterations.is_some_and(|cap| state.iteration >= cap) {
            break Termination::IterationCap;
        }
        if params
            .max_time_s
            .is_some_and(|cap| started.elapsed().as_secs_f64() >= cap)
        {
            break Termination::TimeCap;
        }

        let tours = construct_all(instance, &mut pheromone, params, &mut state, &mut rng);
        let iteration_best = tours
            .iter()
            .map(|t| improve_tour(instance, t, params.local_search))
            .min_by_key(Tour::weight)
            .expect("at least one ant");

        state.iteration += 1;
        if iteration_best.weight() < state.best.weight() {
            state.best = iteration_best.clone();
            state.stagnation = 0;
        } else {
            state.stagnation += 1;
        }
        global_update(&mut pheromone, &state.best, params);

        if params.record_trace {
            state.history.push(TraceRecord {
                iteration: state.iteration,
                iteration_best: iteration_best.weight(),
                global_best: state.best.weight(),
                elapsed_ms: started.elapsed().as_millis() as u64,
            });
        }

        // Spot-check pheromone sanity along the best tour.
        #[cfg(debug_assertions)]
        {
            let nodes = state.best.nodes();
            for i in 0..nodes.len() {
                let (u, v) = (nodes[i], nodes[(i + 1) % nodes.len()]);
                let t = pheromone.get(u, v);
                debug_assert!(t > 0.0 && t == pheromone.get(v, u));
            }
        }
    };

    Ok(RunResult {
        weight: state.best.weight(),
        tour: state.best,
        iterations: state.iteration,
        elapsed: started.elapsed(),
        termination,
        nn_weight: state.t_nn.weight(),
        trace: state.history,
        stats: state.stats,
    })
}
