//! Search representation, decoding, objective, constraints and fitness.

mod evaluate;
mod genome;
mod scenario;

pub use evaluate::{
    check_constraints, feasibility_from_slots, fitness, objective, slot_metrics, EvaluatedSolution, FeasibilityReport,
    Problem, SlotMetrics, Totals, RELATIVE_TOLERANCE, SPEED_TOLERANCE,
};
pub use genome::{denormalize, normalize, Genome, GenomeLayout};
pub use scenario::{ModelOptions, PenaltyMode, RateWeighting, Scenario};
