//! Seeded solver runs, campaigns over (solver, seed) and the random-search
//! control baseline.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use ubopt_core::ga::{self, GaConfig};
use ubopt_core::problem::{Genome, Problem};
use ubopt_core::pso::{self, PsoConfig};
use ubopt_core::report::{BestTracker, SolverReport, StopReason, TraceRecord};

use crate::config::ScenarioConfig;
use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Ga,
    Ipso,
    Pso,
    Random,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [Self::Ga, Self::Ipso, Self::Pso, Self::Random];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ga => "ga",
            Self::Ipso => "ipso",
            Self::Pso => "pso",
            Self::Random => "random",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::Usage(format!("unknown solver {s:?}; expected ga, ipso, pso or random")))
    }
}

/// Iterations after initialization that fit in `budget` evaluations at
/// `population` evaluations each.
pub fn iterations_for_budget(budget: u64, population: usize) -> Result<usize, HarnessError> {
    let s = population as u64;
    if budget < s {
        return Err(HarnessError::Invalid(vec![format!(
            "budget {budget} is smaller than one population of {s}"
        )]));
    }
    Ok(((budget - s) / s).max(1) as usize)
}

/// GA settings for a run: the scenario's GA table with the shared population
/// and, under a budget, the derived generation count and cap.
pub fn ga_config(cfg: &ScenarioConfig, seed: u64, budget: Option<u64>) -> Result<GaConfig, HarnessError> {
    let s = &cfg.solvers;
    let mut ga = GaConfig {
        population: s.population,
        seed,
        ..s.ga.clone()
    };
    if let Some(b) = budget.or(s.budget) {
        ga.generations = iterations_for_budget(b, s.population)?;
        ga.max_evaluations = Some(b);
    }
    Ok(ga)
}

pub fn pso_config(
    cfg: &ScenarioConfig,
    kind: SolverKind,
    seed: u64,
    budget: Option<u64>,
) -> Result<PsoConfig, HarnessError> {
    let s = &cfg.solvers;
    let base = match kind {
        SolverKind::Pso => PsoConfig {
            init_std: s.ipso.init_std,
            init_delta: s.ipso.init_delta,
            init_mean: s.ipso.init_mean.clone(),
            cognitive: s.ipso.cognitive,
            social: s.ipso.social,
            max_velocity: s.ipso.max_velocity,
            iterations: s.ipso.iterations,
            ..PsoConfig::vanilla(s.vanilla_inertia)
        },
        _ => s.ipso.clone(),
    };
    let mut p = PsoConfig {
        swarm: s.population,
        seed,
        ..base
    };
    if let Some(b) = budget.or(s.budget) {
        p.iterations = iterations_for_budget(b, s.population)?;
        p.max_evaluations = Some(b);
    }
    Ok(p)
}

/// Uniform random genomes (frozen genes held), best of `budget` by fitness.
/// Samples are drawn in a fixed order, so a larger budget extends a smaller
/// one's sample sequence.
pub fn random_search_baseline(
    problem: &Problem,
    budget: u64,
    seed: u64,
    block: usize,
) -> Result<SolverReport, HarnessError> {
    if budget < 1 {
        return Err(HarnessError::Invalid(vec!["random search budget must be >= 1".into()]));
    }
    let block = block.max(1) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = problem.dim();
    let mut tracker = BestTracker::default();
    let mut trace = Vec::new();
    let mut evaluations = 0u64;
    let mut best_fitness = f64::INFINITY;
    let mut last_improvement = 0;
    let mut iteration = 0;
    while evaluations < budget {
        let n = block.min(budget - evaluations);
        let genomes = (0..n)
            .map(|_| {
                let mut g: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
                problem.adjust(&mut g);
                Genome(g)
            })
            .collect();
        let batch = problem.evaluate_batch(genomes, evaluations)?;
        evaluations += n;
        tracker.observe_all(&batch);
        let block_best = batch.iter().map(|e| e.fitness).fold(f64::INFINITY, f64::min);
        if block_best < best_fitness {
            best_fitness = block_best;
            last_improvement = iteration;
        }
        trace.push(TraceRecord {
            iteration,
            best_fitness,
            mean_fitness: batch.iter().map(|e| e.fitness).sum::<f64>() / n as f64,
            evaluations,
        });
        iteration += 1;
    }
    let (best, feasible) = tracker.finish();
    Ok(SolverReport {
        solver: "random".into(),
        seed,
        best,
        feasible,
        trace,
        evaluations,
        evaluation_cap: Some(budget),
        last_improvement,
        stop_reason: StopReason::Budget,
    })
}

/// Runs one solver on a validated problem.
pub fn run_solver(
    cfg: &ScenarioConfig,
    problem: &Problem,
    kind: SolverKind,
    seed: u64,
    budget: Option<u64>,
) -> Result<SolverReport, HarnessError> {
    match kind {
        SolverKind::Ga => Ok(ga::run(&ga_config(cfg, seed, budget)?, problem)?),
        SolverKind::Ipso | SolverKind::Pso => Ok(pso::run(&pso_config(cfg, kind, seed, budget)?, problem)?),
        SolverKind::Random => {
            let b = budget.or(cfg.solvers.budget).ok_or_else(|| {
                HarnessError::Usage("random search needs a budget (--budget or solvers.budget)".into())
            })?;
            random_search_baseline(problem, b, seed, cfg.solvers.population)
        }
    }
}

/// A replayable record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunArtifact {
    pub solver: SolverKind,
    pub seed: u64,
    pub budget: Option<u64>,
    pub scenario_hash: String,
    pub config: ScenarioConfig,
    pub report: SolverReport,
    pub wall_clock_s: f64,
}

impl RunArtifact {
    /// JSON with the wall-clock field zeroed, for byte-level comparisons.
    pub fn canonical_json(&self) -> String {
        let mut a = self.clone();
        a.wall_clock_s = 0.0;
        serde_json::to_string(&a).expect("artifact serializes")
    }
}

/// A run that failed, kept alongside the successful artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub solver: SolverKind,
    pub seed: u64,
    pub category: String,
    pub message: String,
}

pub type RunOutcome = Result<RunArtifact, RunFailure>;

pub fn run_one(cfg: &ScenarioConfig, kind: SolverKind, seed: u64, budget: Option<u64>) -> RunOutcome {
    let started = Instant::now();
    let result = cfg.problem().and_then(|p| run_solver(cfg, &p, kind, seed, budget));
    match result {
        Ok(report) => Ok(RunArtifact {
            solver: kind,
            seed,
            budget: budget.or(cfg.solvers.budget),
            scenario_hash: cfg.hash(),
            config: cfg.clone(),
            report,
            wall_clock_s: started.elapsed().as_secs_f64(),
        }),
        Err(e) => Err(RunFailure {
            solver: kind,
            seed,
            category: e.category().into(),
            message: e.to_string(),
        }),
    }
}

/// One outcome per (solver, seed), in solver-major order. Runs execute
/// concurrently on the current rayon pool.
pub fn run_campaign(
    cfg: &ScenarioConfig,
    solvers: &[SolverKind],
    seeds: &[u64],
    budget: Option<u64>,
) -> Vec<RunOutcome> {
    let jobs: Vec<(SolverKind, u64)> = solvers
        .iter()
        .flat_map(|&k| seeds.iter().map(move |&s| (k, s)))
        .collect();
    jobs.into_par_iter().map(|(k, s)| run_one(cfg, k, s, budget)).collect()
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_conversion() {
        assert_eq!(iterations_for_budget(15_000, 50).unwrap(), 299);
        assert_eq!(iterations_for_budget(100, 50).unwrap(), 1);
        assert!(iterations_for_budget(10, 50).is_err());
    }

    #[test]
    fn solver_names_round_trip() {
        for k in SolverKind::ALL {
            assert_eq!(k.name().parse::<SolverKind>().unwrap(), k);
        }
        assert!("de".parse::<SolverKind>().is_err());
    }

    #[test]
    fn median_examples() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&mut []), None);
    }
}
