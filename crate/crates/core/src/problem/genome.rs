//! The normalized search representation shared by every solver.
//!
//! Layout for N slots (stable; the JSON solution dump relies on it):
//!
//! ```text
//! [x̂₂, ŷ₂, ẑ₂, …, x̂_N, ŷ_N, ẑ_N, δ₁, …, δ_N]
//! ```
//!
//! Interior waypoints γ₂..γ_N are normalized per axis over the arena; the
//! endpoints γ₁ = γ_I and γ_{N+1} = γ_F are pinned and not encoded. In
//! fixed-altitude mode the ẑ genes remain in place but are held at the
//! normalized altitude.

use serde::{Deserialize, Serialize};

use crate::error::EncodingError;

/// Maps `value` from `[lo, hi]` onto `[0, 1]`, clamping outside values.
pub fn normalize(value: f64, lo: f64, hi: f64) -> Result<f64, EncodingError> {
    if !(lo < hi) {
        return Err(EncodingError::EmptyRange { lo, hi });
    }
    Ok(((value - lo) / (hi - lo)).clamp(0.0, 1.0))
}

/// Inverse of [`normalize`]; genes outside `[0, 1]` are clamped first.
pub fn denormalize(gene: f64, lo: f64, hi: f64) -> Result<f64, EncodingError> {
    if !(lo < hi) {
        return Err(EncodingError::EmptyRange { lo, hi });
    }
    Ok(lo + gene.clamp(0.0, 1.0) * (hi - lo))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genome(pub Vec<f64>);

impl Genome {
    pub fn genes(&self) -> &[f64] {
        &self.0
    }

    pub fn genes_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(|g| (0.0..=1.0).contains(g))
    }
}

impl From<Vec<f64>> for Genome {
    fn from(v: Vec<f64>) -> Self {
        Genome(v)
    }
}

/// Index arithmetic for the genome of an N-slot mission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenomeLayout {
    pub slots: usize,
}

impl GenomeLayout {
    pub fn new(slots: usize) -> Self {
        Self { slots }
    }

    pub fn interior_waypoints(&self) -> usize {
        self.slots.saturating_sub(1)
    }

    /// 3(N − 1) + N.
    pub fn len(&self) -> usize {
        3 * self.interior_waypoints() + self.slots
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Gene of interior waypoint `k` (0 ↔ γ₂) along `axis`.
    pub fn waypoint_gene(&self, k: usize, axis: usize) -> usize {
        debug_assert!(k < self.interior_waypoints() && axis < 3);
        3 * k + axis
    }

    /// Gene of δ for slot `i` (0-based).
    pub fn delta_gene(&self, i: usize) -> usize {
        3 * self.interior_waypoints() + i
    }

    pub fn is_altitude_gene(&self, gene: usize) -> bool {
        gene < 3 * self.interior_waypoints() && gene % 3 == 2
    }

    pub fn check(&self, genome: &Genome) -> Result<(), EncodingError> {
        if genome.len() == self.len() {
            Ok(())
        } else {
            Err(EncodingError::LengthMismatch {
                expected: self.len(),
                got: genome.len(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(25.0, 0.0, 100.0).unwrap(), 0.25);
        assert_eq!(normalize(-3.0, -3.0, 9.0).unwrap(), 0.0);
        assert_eq!(normalize(500.0, 0.0, 100.0).unwrap(), 1.0);
        assert_eq!(normalize(-5.0, 0.0, 100.0).unwrap(), 0.0);
        assert!(matches!(
            normalize(1.0, 2.0, 2.0),
            Err(EncodingError::EmptyRange { .. })
        ));
        assert!(denormalize(0.5, 3.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn normalize_round_trip(lo in -1e3f64..1e3, span in 1e-3f64..1e3, t in 0.0f64..=1.0) {
            let hi = lo + span;
            let v = lo + t * span;
            let back = denormalize(normalize(v, lo, hi).unwrap(), lo, hi).unwrap();
            prop_assert!((back - v).abs() <= 1e-12 * v.abs().max(span).max(1.0));
        }
    }

    #[test]
    fn layout_counts() {
        let l = GenomeLayout::new(8);
        assert_eq!(l.len(), 3 * 7 + 8);
        assert_eq!(l.waypoint_gene(6, 2), 20);
        assert_eq!(l.delta_gene(0), 21);
        assert!(l.is_altitude_gene(2) && l.is_altitude_gene(20));
        assert!(!l.is_altitude_gene(21));

        let one = GenomeLayout::new(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one.delta_gene(0), 0);
        assert!(!one.is_altitude_gene(0));
    }
}
