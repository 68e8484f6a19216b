use serde::{Deserialize, Serialize};

use crate::problem::EvaluatedSolution;

/// One generation (GA) or iteration (PSO) as streamed to observers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Best fitness held by the population / swarm after this step.
    pub best_fitness: f64,
    /// Mean fitness of the current population / swarm positions.
    pub mean_fitness: f64,
    /// Cumulative fitness evaluations, initialization included.
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MaxIterations,
    Stalled,
    Budget,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub solver: String,
    pub seed: u64,
    /// Best feasible solution seen, or the least-violating one if none was.
    pub best: EvaluatedSolution,
    pub feasible: bool,
    pub trace: Vec<TraceRecord>,
    pub evaluations: u64,
    pub evaluation_cap: Option<u64>,
    /// Last iteration that improved the best fitness (0 = initialization).
    pub last_improvement: usize,
    pub stop_reason: StopReason,
}

impl SolverReport {
    /// Σ R_d of the reported solution when it is feasible, otherwise 0: an
    /// infeasible plan delivers nothing usable.
    pub fn feasible_objective(&self) -> f64 {
        if self.feasible {
            self.best.objective
        } else {
            0.0
        }
    }

    /// Best rate divided by the generations it took to reach it.
    pub fn convergence_ratio(&self) -> f64 {
        self.feasible_objective() / self.last_improvement.max(1) as f64
    }
}

/// Keeps the best feasible and the least-violating solutions seen so far.
#[derive(Debug, Default)]
pub struct BestTracker {
    feasible: Option<EvaluatedSolution>,
    least_violating: Option<EvaluatedSolution>,
}

impl BestTracker {
    pub fn observe(&mut self, s: &EvaluatedSolution) {
        if s.feasibility.feasible {
            if self.feasible.as_ref().is_none_or(|b| s.objective > b.objective) {
                self.feasible = Some(s.clone());
            }
        } else if self.least_violating.as_ref().is_none_or(|b| {
            let (v, bv) = (s.feasibility.worst_violation, b.feasibility.worst_violation);
            v < bv || (v == bv && s.fitness < b.fitness)
        }) {
            self.least_violating = Some(s.clone());
        }
    }

    pub fn observe_all<'a>(&mut self, batch: impl IntoIterator<Item = &'a EvaluatedSolution>) {
        for s in batch {
            self.observe(s);
        }
    }

    pub fn finish(self) -> (EvaluatedSolution, bool) {
        match (self.feasible, self.least_violating) {
            (Some(f), _) => (f, true),
            (None, Some(v)) => (v, false),
            (None, None) => unreachable!("solver finished without evaluating anything"),
        }
    }
}

/// Minimum fitness and its index; ties go to the lowest index.
pub(crate) fn argmin_fitness<'a>(it: impl IntoIterator<Item = &'a f64>) -> Option<(usize, f64)> {
    it.into_iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, f64)>, (i, &f)| match acc {
            Some((_, b)) if b <= f => acc,
            _ => Some((i, f)),
        })
}

pub(crate) fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    values.sum::<f64>() / n.max(1) as f64
}
