//! Exhaustive lattice search for tiny instances.

use ubopt_core::problem::{Genome, Problem};
use ubopt_core::report::{BestTracker, SolverReport, StopReason, TraceRecord};

use crate::error::HarnessError;

pub const MAX_SLOTS: usize = 3;
pub const MAX_POINTS: u64 = 10_000_000;
const CHUNK: usize = 4096;

/// Lattice levels on [0, 1]: `k / (r − 1)`, or the centre when `r = 1`.
pub fn levels(resolution: usize) -> Vec<f64> {
    match resolution {
        0 => Vec::new(),
        1 => vec![0.5],
        r => (0..r).map(|k| k as f64 / (r - 1) as f64).collect(),
    }
}

/// Number of lattice points over the problem's free genes.
pub fn grid_size(problem: &Problem, resolution: usize) -> Option<u64> {
    let free = problem.free_genes().len() as u32;
    (resolution as u64).checked_pow(free)
}

/// Evaluates every lattice point over the free genes (frozen genes held at
/// their fixed value). The first free gene varies slowest; ties keep the
/// earliest point.
pub fn grid_oracle(problem: &Problem, resolution: usize) -> Result<SolverReport, HarnessError> {
    let slots = problem.scenario().params.slots;
    if slots > MAX_SLOTS {
        return Err(HarnessError::GuardRail(format!(
            "grid oracle supports at most {MAX_SLOTS} slots, scenario has {slots}"
        )));
    }
    if resolution < 1 {
        return Err(HarnessError::GuardRail("grid resolution must be >= 1".into()));
    }
    let total = grid_size(problem, resolution)
        .filter(|&n| n <= MAX_POINTS)
        .ok_or_else(|| {
            HarnessError::GuardRail(format!(
                "{resolution} levels over {} free genes exceeds {MAX_POINTS} points",
                problem.free_genes().len()
            ))
        })?;

    let free = problem.free_genes();
    let lv = levels(resolution);
    let template = problem.mean_genome(0.5).0;
    let point = |mut index: u64| {
        let mut g = template.clone();
        for &gene in free.iter().rev() {
            g[gene] = lv[(index % resolution as u64) as usize];
            index /= resolution as u64;
        }
        problem.adjust(&mut g);
        Genome(g)
    };

    let mut tracker = BestTracker::default();
    let mut trace = Vec::new();
    let mut best_fitness = f64::INFINITY;
    let mut last_improvement = 0;
    let mut start = 0u64;
    while start < total {
        let end = (start + CHUNK as u64).min(total);
        let batch = problem.evaluate_batch((start..end).map(point).collect(), start)?;
        tracker.observe_all(&batch);
        let chunk_best = batch.iter().map(|e| e.fitness).fold(f64::INFINITY, f64::min);
        if chunk_best < best_fitness {
            best_fitness = chunk_best;
            last_improvement = trace.len();
        }
        trace.push(TraceRecord {
            iteration: trace.len(),
            best_fitness,
            mean_fitness: batch.iter().map(|e| e.fitness).sum::<f64>() / batch.len() as f64,
            evaluations: end,
        });
        start = end;
    }
    let (best, feasible) = tracker.finish();
    Ok(SolverReport {
        solver: "grid".into(),
        seed: 0,
        best,
        feasible,
        trace,
        evaluations: total,
        evaluation_cap: Some(total),
        last_improvement,
        stop_reason: StopReason::Exhausted,
    })
}
