use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::{Position, PropulsionParams, SystemParams};

/// What an infeasible solution scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PenaltyMode {
    /// `V · (1 + worst normalized violation)`: every feasible solution ranks
    /// ahead of every infeasible one, and less-violating beats more-violating.
    #[default]
    Safe,
    /// A flat −1, exactly as the fitness rule is printed.
    Flat,
}

/// Whether the per-slot rates are scaled by the backscatter share δ_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateWeighting {
    #[default]
    Literal,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelOptions {
    pub penalty_mode: PenaltyMode,
    /// V in the safe penalty.
    pub penalty_scale: f64,
    pub rate_weighting: RateWeighting,
    /// Keep z at the mission altitude H; z genes stay in the genome but are frozen.
    pub fixed_altitude: bool,
}

impl Default for ModelOptions {
    fn default() -> Self {
        Self {
            penalty_mode: PenaltyMode::Safe,
            penalty_scale: 1e6,
            rate_weighting: RateWeighting::Literal,
            fixed_altitude: true,
        }
    }
}

/// A fully resolved problem instance in linear SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub params: SystemParams,
    pub propulsion: PropulsionParams,
    /// γ_I.
    pub start: Position,
    /// γ_F.
    pub end: Position,
    /// GBS location ψ_s.
    pub source: Position,
    /// End-user location ψ_d.
    pub destination: Position,
    pub options: ModelOptions,
}

impl Scenario {
    /// Pinned start waypoint; its altitude is H in fixed-altitude mode.
    pub fn start_waypoint(&self) -> Position {
        self.pin(self.start)
    }

    pub fn end_waypoint(&self) -> Position {
        self.pin(self.end)
    }

    fn pin(&self, p: Position) -> Position {
        if self.options.fixed_altitude {
            Position::new(p.x, p.y, self.params.altitude_m)
        } else {
            p
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let mut issues = match self.params.validate() {
            Ok(()) => Vec::new(),
            Err(ModelError::InvalidParams(v)) => v,
            Err(e) => vec![e.to_string()],
        };
        if let Err(ModelError::InvalidParams(v)) = self.propulsion.validate() {
            issues.extend(v);
        }
        let arena = self.params.arena;
        for (name, p) in [("start", self.start_waypoint()), ("end", self.end_waypoint())] {
            let inside = (0..3).all(|a| arena.axis(a).contains(p.coord(a)));
            if !p.is_finite() || !inside {
                issues.push(format!("{name} waypoint {:?} lies outside the arena", p.to_array()));
            }
        }
        for (name, p) in [("source", self.source), ("destination", self.destination)] {
            if !p.is_finite() {
                issues.push(format!("{name} position must be finite"));
            }
        }
        if self.options.fixed_altitude {
            if !arena.z.contains(self.params.altitude_m) {
                issues.push(format!(
                    "altitude_m = {} outside arena z bounds [{}, {}]",
                    self.params.altitude_m, arena.z.min, arena.z.max
                ));
            }
            for (name, p) in [("source", self.source), ("destination", self.destination)] {
                if p.z == self.params.altitude_m {
                    issues.push(format!(
                        "{name} sits at the flight altitude; UB-to-node distance can vanish"
                    ));
                }
            }
        } else {
            for (name, p) in [("source", self.source), ("destination", self.destination)] {
                if p.z >= arena.z.min {
                    issues.push(format!(
                        "{name} must lie below the arena floor z = {} in 3D mode",
                        arena.z.min
                    ));
                }
            }
        }
        if !(self.options.penalty_scale.is_finite() && self.options.penalty_scale > 0.0) {
            issues.push(format!(
                "penalty_scale must be finite and > 0 (got {})",
                self.options.penalty_scale
            ));
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ModelError::InvalidParams(issues))
        }
    }
}
