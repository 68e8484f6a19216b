use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::genome::{denormalize, normalize, Genome, GenomeLayout};
use super::scenario::{PenaltyMode, RateWeighting, Scenario};
use crate::error::{EncodingError, ModelError};
use crate::model::{
    consumption_breakdown, distance, doppler_factor, harvested_energy_slot, rate_downlink, rate_uplink, slot_speed,
    Position, SlotConsumption, TimeSplit, Trajectory,
};

/// Relative slack on the rate and energy constraints.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;
/// Slack on the per-slot speed constraint, relative to V_max σ_t.
pub const SPEED_TOLERANCE: f64 = 1e-12;

/// Everything the model says about one slot of a decoded solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlotMetrics {
    pub slot: usize,
    /// Slot-start waypoint γ_i.
    pub position: Position,
    pub delta: f64,
    pub d_su: f64,
    pub d_du: f64,
    pub speed: f64,
    pub zeta: f64,
    pub rate_uplink: f64,
    pub rate_downlink: f64,
    pub harvested: f64,
    pub consumption: SlotConsumption,
}

/// Mission-level sums of the per-slot quantities.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Totals {
    pub rate_uplink: f64,
    pub rate_downlink: f64,
    pub harvested: f64,
    pub consumed: f64,
}

impl Totals {
    pub fn from_slots(slots: &[SlotMetrics]) -> Self {
        slots.iter().fold(Totals::default(), |mut t, s| {
            t.rate_uplink += s.rate_uplink;
            t.rate_downlink += s.rate_downlink;
            t.harvested += s.harvested;
            t.consumed += s.consumption.total();
            t
        })
    }
}

/// Constraint margins; non-negative means satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// τξ + ΣR_u − ΣR_d.
    pub cache_balance: f64,
    /// ΣR_d − ξ.
    pub rate_demand: f64,
    /// ΣE_h − ΣE_con.
    pub energy: f64,
    /// min_i (V_max σ_t − Δ_i).
    pub speed: f64,
    /// Endpoint pinning and δ ∈ [0, 1]; zero when both hold.
    pub bounds: f64,
    /// Largest violation, each normalized by the magnitude of its own constraint.
    pub worst_violation: f64,
    pub feasible: bool,
    pub totals: Totals,
}

impl FeasibilityReport {
    pub fn margins(&self) -> [(&'static str, f64); 5] {
        [
            ("cache_balance", self.cache_balance),
            ("rate_demand", self.rate_demand),
            ("energy", self.energy),
            ("speed", self.speed),
            ("bounds", self.bounds),
        ]
    }
}

/// A genome together with everything derived from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedSolution {
    pub genome: Genome,
    pub trajectory: Trajectory,
    pub time_split: TimeSplit,
    /// Σ R_d (bit/s).
    pub objective: f64,
    pub fitness: f64,
    pub feasibility: FeasibilityReport,
    /// Position of this evaluation in the solver's evaluation order.
    pub sequence: u64,
}

fn check_shape(traj: &Trajectory, ts: &TimeSplit, slots: usize) -> Result<(), EncodingError> {
    if traj.waypoints.len() != slots + 1 || ts.len() != slots {
        return Err(EncodingError::ShapeMismatch {
            slots,
            waypoints: traj.waypoints.len(),
            fractions: ts.len(),
        });
    }
    Ok(())
}

/// Per-slot evaluation using slot-start distances and the slot's own speed.
pub fn slot_metrics(traj: &Trajectory, ts: &TimeSplit, sc: &Scenario) -> Result<Vec<SlotMetrics>, EncodingError> {
    let p = &sc.params;
    check_shape(traj, ts, p.slots)?;
    let dt = p.slot_duration();
    (0..p.slots)
        .map(|i| {
            let position = traj.waypoints[i];
            let delta = ts.fractions[i];
            let d_su = distance(position, sc.source);
            let d_du = distance(position, sc.destination);
            let speed = slot_speed(traj, i, dt)?;
            let zeta = doppler_factor(speed, p);
            let weight = match sc.options.rate_weighting {
                RateWeighting::Literal => 1.0,
                RateWeighting::Delta => delta,
            };
            Ok(SlotMetrics {
                slot: i,
                position,
                delta,
                d_su,
                d_du,
                speed,
                zeta,
                rate_uplink: weight * rate_uplink(d_su, zeta, p)?,
                rate_downlink: weight * rate_downlink(d_su, d_du, zeta, p)?,
                harvested: harvested_energy_slot(d_su, delta, p)?,
                consumption: consumption_breakdown(speed, delta, p, &sc.propulsion),
            })
        })
        .collect::<Result<Vec<_>, ModelError>>()
        .map_err(EncodingError::from)
}

/// Σ_i R_d^i.
pub fn objective(traj: &Trajectory, ts: &TimeSplit, sc: &Scenario) -> Result<f64, EncodingError> {
    Ok(slot_metrics(traj, ts, sc)?.iter().map(|s| s.rate_downlink).sum())
}

fn relative_violation(margin: f64, scale: f64) -> f64 {
    if margin >= 0.0 {
        0.0
    } else if scale > 0.0 {
        -margin / scale
    } else {
        -margin
    }
}

pub fn feasibility_from_slots(
    traj: &Trajectory,
    ts: &TimeSplit,
    slots: &[SlotMetrics],
    sc: &Scenario,
) -> FeasibilityReport {
    let p = &sc.params;
    let totals = Totals::from_slots(slots);

    let supply = p.cached_fraction * p.demand_rate_bps + totals.rate_uplink;
    let cache_balance = supply - totals.rate_downlink;
    let cache_scale = supply.abs().max(totals.rate_downlink.abs());

    let rate_demand = totals.rate_downlink - p.demand_rate_bps;
    let demand_scale = totals.rate_downlink.abs().max(p.demand_rate_bps);

    let energy = totals.harvested - totals.consumed;
    let energy_scale = totals.harvested.abs().max(totals.consumed.abs());

    let max_hop = p.max_hop();
    let speed = (0..traj.slots())
        .map(|i| max_hop - distance(traj.waypoints[i + 1], traj.waypoints[i]))
        .fold(f64::INFINITY, f64::min);

    let pin_error = match (traj.first(), traj.last()) {
        (Some(a), Some(b)) => distance(a, sc.start_waypoint()).max(distance(b, sc.end_waypoint())),
        _ => f64::INFINITY,
    };
    let delta_slack = ts
        .fractions
        .iter()
        .map(|d| d.min(1.0 - d))
        .fold(f64::INFINITY, f64::min);
    let bounds = (-pin_error).min(delta_slack.min(0.0));

    let checks = [
        (cache_balance, cache_scale, RELATIVE_TOLERANCE * cache_scale),
        (rate_demand, demand_scale, RELATIVE_TOLERANCE * demand_scale),
        (energy, energy_scale, RELATIVE_TOLERANCE * energy_scale),
        (speed, max_hop, SPEED_TOLERANCE * max_hop.max(1.0)),
        (bounds, 1.0, 0.0),
    ];
    let feasible = checks.iter().all(|&(m, _, tol)| m >= -tol);
    let worst_violation = checks
        .iter()
        .map(|&(m, s, _)| relative_violation(m, s))
        .fold(0.0, f64::max);

    FeasibilityReport {
        cache_balance,
        rate_demand,
        energy,
        speed,
        bounds,
        worst_violation,
        feasible,
        totals,
    }
}

pub fn check_constraints(traj: &Trajectory, ts: &TimeSplit, sc: &Scenario) -> Result<FeasibilityReport, EncodingError> {
    let slots = slot_metrics(traj, ts, sc)?;
    Ok(feasibility_from_slots(traj, ts, &slots, sc))
}

/// Scalar to be minimized: −Σ R_d when feasible, the configured penalty otherwise.
pub fn fitness(objective: f64, report: &FeasibilityReport, sc: &Scenario) -> f64 {
    if report.feasible {
        -objective
    } else {
        match sc.options.penalty_mode {
            PenaltyMode::Flat => -1.0,
            PenaltyMode::Safe => sc.options.penalty_scale * (1.0 + report.worst_violation),
        }
    }
}

/// A validated scenario bound to its genome layout; the evaluation entry
/// point for every solver.
#[derive(Debug, Clone)]
pub struct Problem {
    scenario: Scenario,
    layout: GenomeLayout,
    altitude_gene: f64,
}

impl Problem {
    pub fn new(scenario: Scenario) -> Result<Self, ModelError> {
        scenario.validate()?;
        let z = scenario.params.arena.z;
        let altitude_gene = ((scenario.params.altitude_m - z.min) / z.span()).clamp(0.0, 1.0);
        Ok(Self {
            layout: GenomeLayout::new(scenario.params.slots),
            scenario,
            altitude_gene,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn layout(&self) -> GenomeLayout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.len()
    }

    /// Gene held constant by [`Problem::adjust`], if any.
    pub fn frozen_value(&self, gene: usize) -> Option<f64> {
        (self.scenario.options.fixed_altitude && self.layout.is_altitude_gene(gene)).then_some(self.altitude_gene)
    }

    /// Genes the search actually controls.
    pub fn free_genes(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&g| self.frozen_value(g).is_none()).collect()
    }

    /// Individual adjustment: clamp into `[0, 1]` and reset frozen genes.
    pub fn adjust(&self, genes: &mut [f64]) {
        for (i, g) in genes.iter_mut().enumerate() {
            *g = match self.frozen_value(i) {
                Some(v) => v,
                None if g.is_nan() => 0.5,
                None => g.clamp(0.0, 1.0),
            };
        }
    }

    /// Straight-line flight from γ_I to γ_F with a constant time split.
    pub fn mean_genome(&self, delta: f64) -> Genome {
        let n = self.scenario.params.slots;
        let (a, b) = (self.scenario.start_waypoint(), self.scenario.end_waypoint());
        let arena = self.scenario.params.arena;
        let mut genes = vec![0.0; self.dim()];
        for k in 0..self.layout.interior_waypoints() {
            let p = a.lerp(b, (k + 1) as f64 / n as f64);
            for axis in 0..3 {
                let bounds = arena.axis(axis);
                genes[self.layout.waypoint_gene(k, axis)] =
                    ((p.coord(axis) - bounds.min) / bounds.span()).clamp(0.0, 1.0);
            }
        }
        for i in 0..n {
            genes[self.layout.delta_gene(i)] = delta.clamp(0.0, 1.0);
        }
        self.adjust(&mut genes);
        Genome(genes)
    }

    pub fn decode(&self, g: &Genome) -> Result<(Trajectory, TimeSplit), EncodingError> {
        self.layout.check(g)?;
        let p = &self.scenario.params;
        let mut waypoints = Vec::with_capacity(p.slots + 1);
        waypoints.push(self.scenario.start_waypoint());
        for k in 0..self.layout.interior_waypoints() {
            let mut c = [0.0; 3];
            for (axis, coord) in c.iter_mut().enumerate() {
                let b = p.arena.axis(axis);
                *coord = denormalize(g.0[self.layout.waypoint_gene(k, axis)], b.min, b.max)?;
            }
            if self.scenario.options.fixed_altitude {
                c[2] = p.altitude_m;
            }
            waypoints.push(Position::from_array(c));
        }
        waypoints.push(self.scenario.end_waypoint());
        let fractions = (0..p.slots)
            .map(|i| g.0[self.layout.delta_gene(i)].clamp(0.0, 1.0))
            .collect();
        Ok((Trajectory::new(waypoints), TimeSplit::new(fractions)))
    }

    pub fn encode(&self, traj: &Trajectory, ts: &TimeSplit) -> Result<Genome, EncodingError> {
        let p = &self.scenario.params;
        check_shape(traj, ts, p.slots)?;
        let mut genes = vec![0.0; self.dim()];
        for k in 0..self.layout.interior_waypoints() {
            let w = traj.waypoints[k + 1];
            for axis in 0..3 {
                let b = p.arena.axis(axis);
                genes[self.layout.waypoint_gene(k, axis)] = normalize(w.coord(axis), b.min, b.max)?;
            }
        }
        for (i, d) in ts.fractions.iter().enumerate() {
            genes[self.layout.delta_gene(i)] = d.clamp(0.0, 1.0);
        }
        self.adjust(&mut genes);
        Ok(Genome(genes))
    }

    pub fn evaluate(&self, g: &Genome) -> Result<EvaluatedSolution, EncodingError> {
        let (trajectory, time_split) = self.decode(g)?;
        let slots = slot_metrics(&trajectory, &time_split, &self.scenario)?;
        let objective = slots.iter().map(|s| s.rate_downlink).sum();
        let feasibility = feasibility_from_slots(&trajectory, &time_split, &slots, &self.scenario);
        Ok(EvaluatedSolution {
            genome: g.clone(),
            trajectory,
            time_split,
            objective,
            fitness: fitness(objective, &feasibility, &self.scenario),
            feasibility,
            sequence: 0,
        })
    }

    /// Evaluates `genomes` in parallel, numbering them from `first_sequence`.
    /// Output order matches input order, so results do not depend on the
    /// number of worker threads.
    pub fn evaluate_batch(
        &self,
        genomes: Vec<Genome>,
        first_sequence: u64,
    ) -> Result<Vec<EvaluatedSolution>, EncodingError> {
        genomes
            .into_par_iter()
            .enumerate()
            .map(|(i, g)| {
                let mut e = self.evaluate(&g)?;
                e.sequence = first_sequence + i as u64;
                Ok(e)
            })
            .collect()
    }
}
