//! Real-coded genetic algorithm.
//!
//! Each generation: roulette selection with elitism builds a parent pool,
//! parents are paired for per-gene arithmetic crossover, offspring receive
//! Gaussian mutation and the problem's adjustment, and the best `S` of
//! offspring plus elites form the next population.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::operators::{gaussian_perturb, gaussian_sample, roulette_pick};
use crate::problem::{EvaluatedSolution, Genome, Problem};
use crate::report::{argmin_fitness, mean, BestTracker, SolverReport, StopReason, TraceRecord};

/// An evaluated member of the population.
pub type Individual = EvaluatedSolution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    /// Per-gene crossover probability ε_c.
    pub crossover_rate: f64,
    /// Per-gene mutation probability ε_m.
    pub mutation_rate: f64,
    /// U in N(0, U⁻²).
    pub mutation_spread: f64,
    pub elite_fraction: f64,
    /// Generations without improvement before stopping; `None` disables.
    pub stall_limit: Option<usize>,
    /// σ_υ of the heuristic initialization.
    pub init_std: f64,
    /// Initial time split used by the default straight-line mean genome.
    pub init_delta: f64,
    /// Overrides the straight-line mean genome.
    pub init_mean: Option<Vec<f64>>,
    pub seed: u64,
    pub max_evaluations: Option<u64>,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 100,
            generations: 6000,
            crossover_rate: 0.8,
            mutation_rate: 0.1,
            mutation_spread: 10.0,
            elite_fraction: 0.05,
            stall_limit: Some(200),
            init_std: 0.1,
            init_delta: 0.5,
            init_mean: None,
            seed: 0,
            max_evaluations: None,
        }
    }
}

impl GaConfig {
    pub fn validate(&self, dim: usize) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidConfig(m));
        if self.population < 2 {
            return bad(format!("population must be >= 2 (got {})", self.population));
        }
        if self.generations < 1 {
            return bad("generations must be >= 1".into());
        }
        for (name, r) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return bad(format!("{name} must lie in [0, 1] (got {r})"));
            }
        }
        if !(self.mutation_spread > 0.0) {
            return bad(format!("mutation_spread must be > 0 (got {})", self.mutation_spread));
        }
        if !(0.0..1.0).contains(&self.elite_fraction) {
            return bad(format!(
                "elite_fraction must lie in [0, 1) (got {})",
                self.elite_fraction
            ));
        }
        if !(self.init_std >= 0.0) {
            return bad(format!("init_std must be >= 0 (got {})", self.init_std));
        }
        if let Some(m) = &self.init_mean {
            if m.len() != dim {
                return bad(format!("init_mean has {} genes, problem has {dim}", m.len()));
            }
        }
        if let Some(cap) = self.max_evaluations {
            if cap < self.population as u64 {
                return bad(format!("max_evaluations {cap} cannot cover the initial population"));
            }
        }
        Ok(())
    }

    /// At least one elite, so the best individual always survives.
    pub fn elite_count(&self) -> usize {
        ((self.elite_fraction * self.population as f64).round() as usize).clamp(1, self.population)
    }
}

fn sort_by_fitness(pop: &mut [Individual]) {
    pop.sort_by(|a, b| a.fitness.total_cmp(&b.fitness));
}

/// Heuristic Gaussian initialization around the mean genome, evaluated.
pub fn init_population<R: Rng + ?Sized>(
    cfg: &GaConfig,
    problem: &Problem,
    rng: &mut R,
) -> Result<Vec<Individual>, SolverError> {
    let mean = match &cfg.init_mean {
        Some(m) => m.clone(),
        None => problem.mean_genome(cfg.init_delta).0,
    };
    let genomes = (0..cfg.population)
        .map(|_| {
            let mut g = gaussian_sample(&mean, cfg.init_std, rng);
            problem.adjust(&mut g);
            Genome(g)
        })
        .collect();
    Ok(problem.evaluate_batch(genomes, 0)?)
}

/// Roulette weights for a minimized fitness: w_k = (f_worst − f_k) + ε with
/// ε = 1e-9 |f_worst|, so the best individual gets the largest share and an
/// all-equal population degrades to uniform.
pub fn selection_weights(fitness: &[f64]) -> Vec<f64> {
    let worst = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let eps = 1e-9 * worst.abs();
    fitness.iter().map(|&f| (worst - f) + eps).collect()
}

/// Parent pool of size `S`: the elites unchanged, then roulette picks.
pub fn select<R: Rng + ?Sized>(population: &[Individual], cfg: &GaConfig, rng: &mut R) -> Vec<Individual> {
    let mut sorted = population.to_vec();
    sort_by_fitness(&mut sorted);
    let elites = cfg.elite_count().min(sorted.len());
    let weights = selection_weights(&sorted.iter().map(|i| i.fitness).collect::<Vec<_>>());
    let mut pool: Vec<Individual> = sorted[..elites].to_vec();
    while pool.len() < population.len() {
        pool.push(sorted[roulette_pick(&weights, rng)].clone());
    }
    pool
}

/// Arithmetic crossover of one gene pair with weight φ.
pub fn blend(pa: f64, pb: f64, phi: f64) -> (f64, f64) {
    (phi * pa + (1.0 - phi) * pb, phi * pb + (1.0 - phi) * pa)
}

/// Per-gene arithmetic crossover: each gene is blended with probability
/// `rate` using a fresh φ ~ U(0, 1), otherwise copied.
pub fn crossover<R: Rng + ?Sized>(
    pa: &[f64],
    pb: &[f64],
    rate: f64,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>), SolverError> {
    if pa.len() != pb.len() {
        return Err(SolverError::InvalidConfig(format!(
            "crossover parents differ in length: {} vs {}",
            pa.len(),
            pb.len()
        )));
    }
    let mut c1 = pa.to_vec();
    let mut c2 = pb.to_vec();
    for i in 0..pa.len() {
        if rate > 0.0 && (rate >= 1.0 || rng.random::<f64>() < rate) {
            let phi: f64 = rng.random();
            (c1[i], c2[i]) = blend(pa[i], pb[i], phi);
        }
    }
    Ok((c1, c2))
}

/// Gaussian mutation with standard deviation 1/U, then clamping to [0, 1].
pub fn mutate<R: Rng + ?Sized>(genes: &mut [f64], cfg: &GaConfig, rng: &mut R) {
    gaussian_perturb(genes, cfg.mutation_rate, 1.0 / cfg.mutation_spread, rng);
    for g in genes.iter_mut() {
        *g = g.clamp(0.0, 1.0);
    }
}

/// Offspring genomes for one generation, adjusted but not yet evaluated.
fn breed<R: Rng + ?Sized>(pool: &mut [Individual], cfg: &GaConfig, problem: &Problem, rng: &mut R) -> Vec<Genome> {
    pool.shuffle(rng);
    let n = pool.len();
    let mut children = Vec::with_capacity(n);
    let mut i = 0;
    while children.len() < n {
        let a = &pool[i % n];
        let b = &pool[(i + 1) % n];
        let (c1, c2) = crossover(a.genome.genes(), b.genome.genes(), cfg.crossover_rate, rng)
            .expect("population genomes share one layout");
        for mut c in [c1, c2] {
            if children.len() == n {
                break;
            }
            mutate(&mut c, cfg, rng);
            problem.adjust(&mut c);
            children.push(Genome(c));
        }
        i += 2;
    }
    children
}

pub fn run(cfg: &GaConfig, problem: &Problem) -> Result<SolverReport, SolverError> {
    run_with_observer(cfg, problem, &mut |_| {})
}

/// Runs the GA, handing each generation's record to `observer`.
pub fn run_with_observer(
    cfg: &GaConfig,
    problem: &Problem,
    observer: &mut dyn FnMut(&TraceRecord),
) -> Result<SolverReport, SolverError> {
    cfg.validate(problem.dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let s = cfg.population;

    let mut population = init_population(cfg, problem, &mut rng)?;
    let mut evaluations = s as u64;
    let mut tracker = BestTracker::default();
    tracker.observe_all(&population);
    sort_by_fitness(&mut population);

    let mut best_fitness = population[0].fitness;
    let mut last_improvement = 0;
    let mut trace = Vec::with_capacity(cfg.generations.min(10_000));
    let mut stop_reason = StopReason::MaxIterations;

    for generation in 1..=cfg.generations {
        if cfg.max_evaluations.is_some_and(|cap| evaluations + s as u64 > cap) {
            stop_reason = StopReason::Budget;
            break;
        }
        let mut pool = select(&population, cfg, &mut rng);
        let children = breed(&mut pool, cfg, problem, &mut rng);
        let children = problem.evaluate_batch(children, evaluations)?;
        evaluations += children.len() as u64;
        tracker.observe_all(&children);

        let mut candidates = children;
        candidates.extend(population.drain(..cfg.elite_count()));
        sort_by_fitness(&mut candidates);
        candidates.truncate(s);
        population = candidates;

        if population[0].fitness < best_fitness - 1e-12 {
            last_improvement = generation;
        }
        best_fitness = best_fitness.min(population[0].fitness);

        let record = TraceRecord {
            iteration: generation,
            best_fitness: population[0].fitness,
            mean_fitness: mean(population.iter().map(|i| i.fitness)),
            evaluations,
        };
        observer(&record);
        trace.push(record);

        if cfg
            .stall_limit
            .is_some_and(|limit| generation - last_improvement >= limit)
        {
            stop_reason = StopReason::Stalled;
            break;
        }
    }

    debug_assert!(argmin_fitness(population.iter().map(|i| &i.fitness)).is_some());
    let (best, feasible) = tracker.finish();
    Ok(SolverReport {
        solver: "ga".into(),
        seed: cfg.seed,
        best,
        feasible,
        trace,
        evaluations,
        evaluation_cap: cfg.max_evaluations,
        last_improvement,
        stop_reason,
    })
}
