//! Particle swarm optimization with a decaying inertia weight and random
//! position mutation (the improved variant), plus the constant-inertia
//! vanilla variant as a degenerate configuration of the same loop.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::operators::{gaussian_perturb, gaussian_sample};
use crate::problem::{EvaluatedSolution, Genome, Problem};
use crate::report::{argmin_fitness, mean, BestTracker, SolverReport, StopReason, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsoVariant {
    Improved,
    Vanilla,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoConfig {
    pub variant: PsoVariant,
    pub swarm: usize,
    pub iterations: usize,
    pub inertia_max: f64,
    pub inertia_min: f64,
    /// Shape of the inertia decay: w_max − (w_max − w_min)(t/G)^exponent.
    pub inertia_exponent: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Per-gene mutation probability; zero disables mutation.
    pub mutation_rate: f64,
    pub mutation_variance: f64,
    /// Per-gene velocity clamp; `None` leaves velocity unbounded.
    pub max_velocity: Option<f64>,
    pub init_std: f64,
    pub init_delta: f64,
    pub init_mean: Option<Vec<f64>>,
    pub seed: u64,
    pub max_evaluations: Option<u64>,
}

/// Constant inertia of the vanilla variant: the improved schedule frozen at
/// its starting value.
pub const VANILLA_INERTIA: f64 = 0.9;

impl Default for PsoConfig {
    fn default() -> Self {
        Self::improved()
    }
}

impl PsoConfig {
    pub fn improved() -> Self {
        Self {
            variant: PsoVariant::Improved,
            swarm: 50,
            iterations: 2000,
            inertia_max: 0.9,
            inertia_min: 0.1,
            inertia_exponent: 0.5,
            cognitive: 1.5,
            social: 1.5,
            mutation_rate: 0.1,
            mutation_variance: 0.1,
            max_velocity: None,
            init_std: 0.1,
            init_delta: 0.5,
            init_mean: None,
            seed: 0,
            max_evaluations: None,
        }
    }

    pub fn vanilla(inertia: f64) -> Self {
        Self {
            variant: PsoVariant::Vanilla,
            inertia_max: inertia,
            inertia_min: inertia,
            mutation_rate: 0.0,
            ..Self::improved()
        }
    }

    pub fn validate(&self, dim: usize) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidConfig(m));
        if self.swarm < 2 {
            return bad("swarm must be >= 2".into());
        }
        if self.iterations < 1 {
            return bad("iterations must be >= 1".into());
        }
        if !(self.inertia_min >= 0.0 && self.inertia_min <= self.inertia_max && self.inertia_max.is_finite()) {
            return bad(format!(
                "inertia bounds must satisfy 0 <= min <= max (got {}, {})",
                self.inertia_min, self.inertia_max
            ));
        }
        if !(self.inertia_exponent > 0.0) {
            return bad(format!("inertia_exponent must be > 0 (got {})", self.inertia_exponent));
        }
        if !(self.cognitive >= 0.0 && self.social >= 0.0) {
            return bad("acceleration coefficients must be >= 0".into());
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad(format!("mutation_rate must lie in [0, 1] (got {})", self.mutation_rate));
        }
        if !(self.mutation_variance >= 0.0) {
            return bad(format!(
                "mutation_variance must be >= 0 (got {})",
                self.mutation_variance
            ));
        }
        if self.variant == PsoVariant::Vanilla && (self.mutation_rate != 0.0 || self.inertia_min != self.inertia_max) {
            return bad("vanilla PSO requires constant inertia and no mutation".into());
        }
        if let Some(v) = self.max_velocity {
            if !(v > 0.0) {
                return bad(format!("max_velocity must be > 0 (got {v})"));
            }
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
            if cap < self.swarm as u64 {
                return bad(format!("max_evaluations {cap} cannot cover the initial swarm"));
            }
        }
        Ok(())
    }

    /// Inertia weight at iteration `t` of `total`.
    pub fn inertia_at(&self, t: usize, total: usize) -> f64 {
        let frac = (t as f64 / total.max(1) as f64).clamp(0.0, 1.0);
        if frac == 1.0 {
            // the general form can miss w_min by an ulp
            return self.inertia_min;
        }
        self.inertia_max - (self.inertia_max - self.inertia_min) * frac.powf(self.inertia_exponent)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best: EvaluatedSolution,
}

/// Gaussian positions around the mean genome, zero velocity, personal best
/// at the start position. Returns the swarm and the global-best index.
pub fn init_swarm<R: Rng + ?Sized>(
    cfg: &PsoConfig,
    problem: &Problem,
    rng: &mut R,
) -> Result<(Vec<Particle>, usize), SolverError> {
    let mean = match &cfg.init_mean {
        Some(m) => m.clone(),
        None => problem.mean_genome(cfg.init_delta).0,
    };
    let genomes: Vec<Genome> = (0..cfg.swarm)
        .map(|_| {
            let mut g = gaussian_sample(&mean, cfg.init_std, rng);
            problem.adjust(&mut g);
            Genome(g)
        })
        .collect();
    let evaluated = problem.evaluate_batch(genomes, 0)?;
    let dim = problem.dim();
    let swarm: Vec<Particle> = evaluated
        .into_iter()
        .map(|e| Particle {
            position: e.genome.0.clone(),
            velocity: vec![0.0; dim],
            best: e,
        })
        .collect();
    let (g, _) = argmin_fitness(swarm.iter().map(|p| &p.best.fitness)).expect("swarm is non-empty");
    Ok((swarm, g))
}

/// Velocity update with explicit uniform draws `r1`, `r2` per dimension.
#[allow(clippy::too_many_arguments)]
pub fn velocity_step(
    velocity: &mut [f64],
    position: &[f64],
    personal: &[f64],
    global: &[f64],
    inertia: f64,
    cfg: &PsoConfig,
    mut draw: impl FnMut() -> (f64, f64),
) {
    for d in 0..velocity.len() {
        let (r1, r2) = draw();
        let v = inertia * velocity[d]
            + cfg.cognitive * r1 * (personal[d] - position[d])
            + cfg.social * r2 * (global[d] - position[d]);
        velocity[d] = match cfg.max_velocity {
            Some(vmax) => v.clamp(-vmax, vmax),
            None => v,
        };
    }
}

/// Velocity update with fresh `r1`, then `r2` per dimension from `rng`.
pub fn update_velocity<R: Rng + ?Sized>(
    particle: &mut Particle,
    global: &[f64],
    inertia: f64,
    cfg: &PsoConfig,
    rng: &mut R,
) {
    let Particle {
        position,
        velocity,
        best,
    } = particle;
    velocity_step(velocity, position, best.genome.genes(), global, inertia, cfg, || {
        let r1: f64 = rng.random();
        let r2: f64 = rng.random();
        (r1, r2)
    });
}

pub fn update_position(particle: &mut Particle, problem: &Problem) {
    for (x, v) in particle.position.iter_mut().zip(&particle.velocity) {
        *x += v;
    }
    problem.adjust(&mut particle.position);
}

/// Adds N(0, variance) to each gene with probability `cfg.mutation_rate`,
/// then adjusts. Returns whether the position changed.
pub fn ipso_mutate<R: Rng + ?Sized>(position: &mut [f64], cfg: &PsoConfig, problem: &Problem, rng: &mut R) -> bool {
    if cfg.mutation_rate <= 0.0 {
        return false;
    }
    let before = position.to_vec();
    gaussian_perturb(position, cfg.mutation_rate, cfg.mutation_variance.sqrt(), rng);
    problem.adjust(position);
    position != before.as_slice()
}

pub fn run(cfg: &PsoConfig, problem: &Problem) -> Result<SolverReport, SolverError> {
    run_with_observer(cfg, problem, &mut |_| {})
}

/// Runs the swarm, handing each iteration's record to `observer`.
///
/// Per iteration: particles mutated at the end of the previous iteration
/// are evaluated where they landed, velocities and positions move, the batch
/// is evaluated, personal and global bests update on strict improvement,
/// then every particle except the global-best owner may mutate. Mutated
/// re-evaluations count against `max_evaluations` like any other.
pub fn run_with_observer(
    cfg: &PsoConfig,
    problem: &Problem,
    observer: &mut dyn FnMut(&TraceRecord),
) -> Result<SolverReport, SolverError> {
    cfg.validate(problem.dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let s = cfg.swarm;

    let (mut swarm, mut gbest) = init_swarm(cfg, problem, &mut rng)?;
    let mut evaluations = s as u64;
    let mut tracker = BestTracker::default();
    tracker.observe_all(swarm.iter().map(|p| &p.best));

    let mut last_improvement = 0;
    let mut trace = Vec::with_capacity(cfg.iterations.min(10_000));
    let mut stop_reason = StopReason::MaxIterations;

    let mut mutated: Vec<usize> = Vec::new();

    for t in 1..=cfg.iterations {
        let needed = (mutated.len() + s) as u64;
        if cfg.max_evaluations.is_some_and(|cap| evaluations + needed > cap) {
            stop_reason = StopReason::Budget;
            break;
        }
        if !mutated.is_empty() {
            let batch = mutated.iter().map(|&i| Genome(swarm[i].position.clone())).collect();
            let evaluated = problem.evaluate_batch(batch, evaluations)?;
            evaluations += mutated.len() as u64;
            tracker.observe_all(&evaluated);
            for (&i, e) in mutated.iter().zip(evaluated) {
                if e.fitness < swarm[i].best.fitness {
                    swarm[i].best = e;
                }
            }
            let (candidate, fit) = argmin_fitness(swarm.iter().map(|p| &p.best.fitness)).expect("swarm is non-empty");
            if fit < swarm[gbest].best.fitness {
                gbest = candidate;
                last_improvement = t;
            }
        }
        let inertia = cfg.inertia_at(t, cfg.iterations);
        let global = swarm[gbest].best.genome.0.clone();
        for p in swarm.iter_mut() {
            update_velocity(p, &global, inertia, cfg, &mut rng);
            update_position(p, problem);
        }

        let batch = swarm.iter().map(|p| Genome(p.position.clone())).collect();
        let evaluated = problem.evaluate_batch(batch, evaluations)?;
        evaluations += s as u64;
        tracker.observe_all(&evaluated);
        let mean_fitness = mean(evaluated.iter().map(|e| e.fitness));

        for (p, e) in swarm.iter_mut().zip(evaluated) {
            if e.fitness < p.best.fitness {
                p.best = e;
            }
        }
        let (candidate, fit) = argmin_fitness(swarm.iter().map(|p| &p.best.fitness)).expect("swarm is non-empty");
        if fit < swarm[gbest].best.fitness {
            gbest = candidate;
            last_improvement = t;
        }

        mutated.clear();
        for (i, p) in swarm.iter_mut().enumerate() {
            if i != gbest && ipso_mutate(&mut p.position, cfg, problem, &mut rng) {
                mutated.push(i);
            }
        }

        let record = TraceRecord {
            iteration: t,
            best_fitness: swarm[gbest].best.fitness,
            mean_fitness,
            evaluations,
        };
        observer(&record);
        trace.push(record);
    }

    let (best, feasible) = tracker.finish();
    Ok(SolverReport {
        solver: match cfg.variant {
            PsoVariant::Improved => "ipso".into(),
            PsoVariant::Vanilla => "pso".into(),
        },
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
