use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// A point in the local Cartesian frame, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn coord(&self, axis: usize) -> f64 {
        self.to_array()[axis]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm(self) -> f64 {
        // hypot avoids overflow for far-apart points
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn lerp(self, other: Position, t: f64) -> Position {
        self + (other - self) * t
    }
}

impl Add for Position {
    type Output = Position;
    fn add(self, rhs: Position) -> Position {
        Position::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Position {
    type Output = Position;
    fn sub(self, rhs: Position) -> Position {
        Position::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Position {
    type Output = Position;
    fn mul(self, k: f64) -> Position {
        Position::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Euclidean distance ‖a − b‖.
pub fn distance(a: Position, b: Position) -> f64 {
    (a - b).norm()
}

/// UB waypoints γ₁..γ_{N+1}; slot `i` flies from `waypoints[i]` to `waypoints[i + 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub waypoints: Vec<Position>,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Position>) -> Self {
        Self { waypoints }
    }

    pub fn slots(&self) -> usize {
        self.waypoints.len().saturating_sub(1)
    }

    /// Displacement Δ_i flown during slot `slot` (0-based).
    pub fn hop(&self, slot: usize) -> Result<f64, ModelError> {
        if slot >= self.slots() {
            return Err(ModelError::SlotOutOfRange {
                slot,
                slots: self.slots(),
            });
        }
        Ok(distance(self.waypoints[slot + 1], self.waypoints[slot]))
    }

    pub fn first(&self) -> Option<Position> {
        self.waypoints.first().copied()
    }

    pub fn last(&self) -> Option<Position> {
        self.waypoints.last().copied()
    }
}

/// Per-slot backscatter fraction δ_i; the remaining 1 − δ_i harvests energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSplit {
    pub fractions: Vec<f64>,
}

impl TimeSplit {
    pub fn new(fractions: Vec<f64>) -> Self {
        Self { fractions }
    }

    pub fn uniform(slots: usize, delta: f64) -> Self {
        Self {
            fractions: vec![delta; slots],
        }
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    pub fn in_range(&self) -> bool {
        self.fractions.iter().all(|d| (0.0..=1.0).contains(d))
    }
}

/// Speed during slot `slot` (0-based): Δ_i / σ_t.
pub fn slot_speed(traj: &Trajectory, slot: usize, slot_duration: f64) -> Result<f64, ModelError> {
    Ok(traj.hop(slot)? / slot_duration)
}
