use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Euler–Mascheroni constant as it enters the ergodic-rate approximation.
pub const EULER_GAMMA: f64 = 0.5772156649;

/// Closed interval along one axis of the flight arena, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisBounds {
    pub min: f64,
    pub max: f64,
}

impl AxisBounds {
    pub const fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arena {
    pub x: AxisBounds,
    pub y: AxisBounds,
    pub z: AxisBounds,
}

impl Arena {
    pub fn axis(&self, axis: usize) -> AxisBounds {
        match axis {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("axis index {axis} out of range"),
        }
    }
}

/// Physical constants of the GBS → UB → user link, all in linear SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// System bandwidth B (Hz).
    pub bandwidth_hz: f64,
    /// Reference channel gain ω₀ at 1 m (linear).
    pub ref_gain: f64,
    /// Path-loss exponent α.
    pub path_loss_exponent: f64,
    /// Energy-harvesting efficiency μ.
    pub harvest_efficiency: f64,
    /// GBS transmit power P_s (W).
    pub source_power_w: f64,
    /// Wireless power transfer power P_WPT (W).
    pub wpt_power_w: f64,
    /// UB transmit power from its cache P_u (W).
    pub ub_power_w: f64,
    /// Backscatter circuit power P_b (W).
    pub backscatter_power_w: f64,
    /// Backscatter coefficient η.
    pub backscatter_coeff: f64,
    /// Fraction τ of the requested data held in the UB cache.
    pub cached_fraction: f64,
    /// Rate ξ requested by the end user (bit/s over the mission).
    pub demand_rate_bps: f64,
    /// AWGN variance at the UB, σ_u² (W).
    pub uplink_noise_w: f64,
    /// AWGN variance at the user, σ_d² (W).
    pub downlink_noise_w: f64,
    /// Estimation-error noise variance σ_n² (W).
    pub estimation_noise_w: f64,
    /// Rician factor G (linear).
    pub rician_factor: f64,
    pub carrier_hz: f64,
    pub light_speed_mps: f64,
    /// Sampling time T_b (s).
    pub sampling_time_s: f64,
    /// Mission duration T (s).
    pub mission_time_s: f64,
    /// Number of time slots N.
    pub slots: usize,
    /// Flight altitude H (m).
    pub altitude_m: f64,
    /// Maximum UB speed V_max (m/s).
    pub max_speed_mps: f64,
    pub euler_gamma: f64,
    pub arena: Arena,
}

impl SystemParams {
    /// Slot duration σ_t = T / N.
    pub fn slot_duration(&self) -> f64 {
        self.mission_time_s / self.slots as f64
    }

    /// Longest admissible hop within one slot, V_max σ_t.
    pub fn max_hop(&self) -> f64 {
        self.max_speed_mps * self.slot_duration()
    }

    /// Carrier wavelength c / f₀.
    pub fn wavelength(&self) -> f64 {
        self.light_speed_mps / self.carrier_hz
    }

    /// Cache transmit power P̄_u = ⌈τ⌉ P_u.
    pub fn cache_power_w(&self) -> f64 {
        self.cached_fraction.ceil() * self.ub_power_w
    }

    /// Checks every invariant and reports all violations at once.
    pub fn validate(&self) -> Result<(), ModelError> {
        let mut issues = Vec::new();
        let mut finite_positive = |name: &str, v: f64| {
            if !(v.is_finite() && v > 0.0) {
                issues.push(format!("{name} must be finite and > 0 (got {v})"));
            }
        };
        finite_positive("bandwidth_hz", self.bandwidth_hz);
        finite_positive("ref_gain", self.ref_gain);
        finite_positive("path_loss_exponent", self.path_loss_exponent);
        finite_positive("carrier_hz", self.carrier_hz);
        finite_positive("light_speed_mps", self.light_speed_mps);
        finite_positive("mission_time_s", self.mission_time_s);
        finite_positive("max_speed_mps", self.max_speed_mps);
        finite_positive("uplink_noise_w", self.uplink_noise_w);
        finite_positive("downlink_noise_w", self.downlink_noise_w);

        let mut non_negative = |name: &str, v: f64| {
            if !(v.is_finite() && v >= 0.0) {
                issues.push(format!("{name} must be finite and >= 0 (got {v})"));
            }
        };
        non_negative("source_power_w", self.source_power_w);
        non_negative("wpt_power_w", self.wpt_power_w);
        non_negative("ub_power_w", self.ub_power_w);
        non_negative("backscatter_power_w", self.backscatter_power_w);
        non_negative("demand_rate_bps", self.demand_rate_bps);
        non_negative("estimation_noise_w", self.estimation_noise_w);
        non_negative("rician_factor", self.rician_factor);
        non_negative("sampling_time_s", self.sampling_time_s);

        let mut unit_range = |name: &str, v: f64, open_low: bool| {
            let ok = if open_low {
                v > 0.0 && v <= 1.0
            } else {
                (0.0..=1.0).contains(&v)
            };
            if !ok {
                let range = if open_low { "(0, 1]" } else { "[0, 1]" };
                issues.push(format!("{name} must lie in {range} (got {v})"));
            }
        };
        unit_range("harvest_efficiency", self.harvest_efficiency, true);
        unit_range("backscatter_coeff", self.backscatter_coeff, true);
        unit_range("cached_fraction", self.cached_fraction, false);

        if self.slots < 1 {
            issues.push("slots must be >= 1".to_string());
        }
        if !self.altitude_m.is_finite() {
            issues.push(format!("altitude_m must be finite (got {})", self.altitude_m));
        }
        for (name, b) in [("x", self.arena.x), ("y", self.arena.y), ("z", self.arena.z)] {
            if !(b.min.is_finite() && b.max.is_finite() && b.min < b.max) {
                issues.push(format!(
                    "arena {name} bounds need min < max (got [{}, {}])",
                    b.min, b.max
                ));
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ModelError::InvalidParams(issues))
        }
    }
}

/// Rotary-wing constants from which the propulsion model is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotorConstants {
    /// Profile drag coefficient δ.
    pub profile_drag_coeff: f64,
    /// Air density ρ (kg/m³).
    pub air_density: f64,
    /// Rotor solidity s.
    pub rotor_solidity: f64,
    /// Rotor disc area A (m²).
    pub disc_area_m2: f64,
    /// Blade angular velocity Ω (rad/s).
    pub blade_angular_velocity: f64,
    /// Rotor radius R (m).
    pub rotor_radius_m: f64,
    /// Incremental correction factor to induced power, I.
    pub induced_correction: f64,
    /// Aircraft weight W (N).
    pub aircraft_weight_n: f64,
    /// Fuselage drag ratio a₀.
    pub fuselage_drag_ratio: f64,
    /// Mean rotor induced velocity in hover v₀ (m/s).
    pub hover_induced_velocity: f64,
}

/// How λ₁ is formed from the rotor constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda1Convention {
    /// λ₁ = 3 / (Ω² R²), dimensionally consistent with a speed-squared multiplier.
    #[default]
    TipSpeed,
    /// λ₁ = 3 σ_t / (Ω² R²), as printed alongside the propulsion model.
    Literal,
}

/// Coefficients of the rotary-wing propulsion power model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropulsionParams {
    /// Blade profile power in hover P₀ (W).
    pub blade_profile_w: f64,
    /// Induced power in hover P₁ (W).
    pub induced_w: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    /// Raw constants, when the coefficients were derived rather than given.
    pub rotor: Option<RotorConstants>,
}

impl PropulsionParams {
    pub fn from_rotor(rotor: &RotorConstants, convention: Lambda1Convention, slot_duration: f64) -> Self {
        let r = rotor;
        let tip_speed_sq = (r.blade_angular_velocity * r.rotor_radius_m).powi(2);
        let blade_profile_w = r.profile_drag_coeff / 8.0
            * r.air_density
            * r.rotor_solidity
            * r.disc_area_m2
            * (r.blade_angular_velocity * r.rotor_radius_m).powi(3);
        let induced_w = (1.0 + r.induced_correction) * r.aircraft_weight_n.powf(1.5)
            / (2.0 * r.air_density * r.disc_area_m2).sqrt();
        let lambda1 = match convention {
            Lambda1Convention::TipSpeed => 3.0 / tip_speed_sq,
            Lambda1Convention::Literal => 3.0 * slot_duration / tip_speed_sq,
        };
        Self {
            blade_profile_w,
            induced_w,
            lambda1,
            lambda2: 1.0 / (2.0 * r.hover_induced_velocity.powi(2)),
            lambda3: 0.5 * r.fuselage_drag_ratio * r.air_density * r.rotor_solidity * r.disc_area_m2,
            rotor: Some(*rotor),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let mut issues = Vec::new();
        for (name, v) in [
            ("blade_profile_w", self.blade_profile_w),
            ("induced_w", self.induced_w),
            ("lambda1", self.lambda1),
            ("lambda3", self.lambda3),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                issues.push(format!("{name} must be finite and >= 0 (got {v})"));
            }
        }
        if !(self.lambda2.is_finite() && self.lambda2 > 0.0) {
            issues.push(format!("lambda2 must be finite and > 0 (got {})", self.lambda2));
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ModelError::InvalidParams(issues))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotor() -> RotorConstants {
        RotorConstants {
            profile_drag_coeff: 0.012,
            air_density: 1.225,
            rotor_solidity: 0.05,
            disc_area_m2: 0.503,
            blade_angular_velocity: 300.0,
            rotor_radius_m: 0.4,
            induced_correction: 0.1,
            aircraft_weight_n: 20.0,
            fuselage_drag_ratio: 0.6,
            hover_induced_velocity: 4.03,
        }
    }

    #[test]
    fn derived_rotor_coefficients() {
        let pp = PropulsionParams::from_rotor(&rotor(), Lambda1Convention::TipSpeed, 5.0);
        // Well-known rotary-wing reference values: P0 ≈ 79.86 W, P1 ≈ 88.63 W.
        assert!((pp.blade_profile_w - 79.86).abs() < 0.01, "{}", pp.blade_profile_w);
        assert!((pp.induced_w - 88.63).abs() < 0.01, "{}", pp.induced_w);
        assert!((pp.lambda1 - 3.0 / 120.0f64.powi(2)).abs() < 1e-15);
        assert!((pp.lambda2 - 1.0 / (2.0 * 4.03f64 * 4.03)).abs() < 1e-15);
        assert!((pp.lambda3 - 0.5 * 0.6 * 1.225 * 0.05 * 0.503).abs() < 1e-15);
        pp.validate().unwrap();
    }

    #[test]
    fn literal_lambda1_scales_with_slot() {
        let a = PropulsionParams::from_rotor(&rotor(), Lambda1Convention::TipSpeed, 5.0);
        let b = PropulsionParams::from_rotor(&rotor(), Lambda1Convention::Literal, 5.0);
        assert!((b.lambda1 - 5.0 * a.lambda1).abs() < 1e-15);
    }

    #[test]
    fn cache_power_is_indicator_of_tau() {
        let mut p = crate::model::tests_support::params();
        p.ub_power_w = 2.0;
        p.cached_fraction = 0.0;
        assert_eq!(p.cache_power_w(), 0.0);
        p.cached_fraction = 0.01;
        assert_eq!(p.cache_power_w(), 2.0);
        p.cached_fraction = 1.0;
        assert_eq!(p.cache_power_w(), 2.0);
    }

    #[test]
    fn validate_lists_every_violation() {
        let mut p = crate::model::tests_support::params();
        p.bandwidth_hz = 0.0;
        p.cached_fraction = 1.5;
        p.arena.y = AxisBounds::new(3.0, 3.0);
        match p.validate() {
            Err(ModelError::InvalidParams(list)) => assert_eq!(list.len(), 3, "{list:?}"),
            other => panic!("expected invalid params, got {other:?}"),
        }
    }
}
