use serde::{Deserialize, Serialize};

use super::params::{PropulsionParams, SystemParams};
use crate::error::ModelError;

/// Energy harvested during the (1 − δ_i) share of one slot (J).
pub fn harvested_energy_slot(d_su: f64, delta: f64, p: &SystemParams) -> Result<f64, ModelError> {
    if !(d_su > 0.0) {
        return Err(ModelError::NonPositiveDistance(d_su));
    }
    Ok(
        p.ref_gain * p.harvest_efficiency * (1.0 - delta) * p.slot_duration() * p.wpt_power_w
            / d_su.powf(p.path_loss_exponent),
    )
}

/// Rotary-wing propulsion power at forward speed `v` (W).
pub fn flying_power(v: f64, pp: &PropulsionParams) -> f64 {
    let v2 = v * v;
    let a = pp.lambda2 * v2;
    // sqrt(1 + a²) − a rewritten as 1 / (sqrt(1 + a²) + a): no cancellation at high speed
    let induced = (1.0 / (a.hypot(1.0) + a)).sqrt();
    pp.blade_profile_w * (1.0 + pp.lambda1 * v2) + pp.induced_w * induced + pp.lambda3 * v2 * v
}

/// Per-slot consumption split into its three sources (J).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SlotConsumption {
    pub flying: f64,
    pub backscatter: f64,
    pub cache: f64,
}

impl SlotConsumption {
    pub fn total(&self) -> f64 {
        self.flying + self.backscatter + self.cache
    }
}

pub fn consumption_breakdown(v: f64, delta: f64, p: &SystemParams, pp: &PropulsionParams) -> SlotConsumption {
    let dt = p.slot_duration();
    SlotConsumption {
        flying: dt * flying_power(v, pp),
        backscatter: delta * dt * p.backscatter_power_w,
        cache: delta * dt * p.ub_power_w,
    }
}

/// E_fly + E_back + E_cach for one slot (J).
pub fn consumption_energy_slot(v: f64, delta: f64, p: &SystemParams, pp: &PropulsionParams) -> f64 {
    consumption_breakdown(v, delta, p, pp).total()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests_support::{params, propulsion, random_params, random_propulsion};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn flying_oracle(v: f64, pp: &PropulsionParams) -> f64 {
        pp.blade_profile_w * (1.0 + pp.lambda1 * v.powi(2))
            + pp.induced_w * ((1.0 + pp.lambda2.powi(2) * v.powi(4)).sqrt() - pp.lambda2 * v.powi(2)).sqrt()
            + pp.lambda3 * v.powi(3)
    }

    fn harvest_oracle(d: f64, delta: f64, p: &SystemParams) -> f64 {
        let sigma_t = p.mission_time_s / p.slots as f64;
        p.ref_gain * p.harvest_efficiency * (1.0 - delta) * sigma_t * p.wpt_power_w * d.powf(-p.path_loss_exponent)
    }

    #[test]
    fn harvest_examples() {
        let mut p = params();
        assert_eq!(harvested_energy_slot(20.0, 1.0, &p).unwrap(), 0.0);
        p.ref_gain = 1.0;
        p.harvest_efficiency = 0.5;
        p.mission_time_s = p.slots as f64;
        p.wpt_power_w = 2.0;
        assert!((harvested_energy_slot(1.0, 0.0, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!(harvested_energy_slot(0.0, 0.0, &p).is_err());
    }

    #[test]
    fn harvest_decreasing_in_distance_and_linear() {
        let p = params();
        let mut prev = f64::INFINITY;
        for k in 1..500 {
            let e = harvested_energy_slot(k as f64 * 0.7, 0.3, &p).unwrap();
            assert!(e < prev);
            prev = e;
        }
        let e1 = harvested_energy_slot(40.0, 0.2, &p).unwrap();
        let e2 = harvested_energy_slot(40.0, 0.6, &p).unwrap();
        assert!((e1 / e2 - 0.8 / 0.4).abs() < 1e-12);
        let mut q = p.clone();
        q.wpt_power_w *= 3.0;
        assert!((harvested_energy_slot(40.0, 0.2, &q).unwrap() / e1 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn flying_power_examples() {
        let pp = propulsion();
        assert_eq!(flying_power(0.0, &pp), pp.blade_profile_w + pp.induced_w);
        let parasite = PropulsionParams {
            blade_profile_w: 0.0,
            induced_w: 0.0,
            lambda1: 0.1,
            lambda2: 0.2,
            lambda3: 0.5,
            rotor: None,
        };
        assert!((flying_power(2.0, &parasite) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_agreement_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let pp = random_propulsion(&mut rng);
            let p = random_params(&mut rng);
            let v = rng.random_range(0.0..40.0);
            let a = flying_power(v, &pp);
            let b = flying_oracle(v, &pp);
            assert!((a - b).abs() <= 1e-9 * b, "v={v} {a} {b}");
            let d = rng.random_range(1.0..400.0);
            let delta = rng.random_range(0.0..=1.0);
            let h = harvested_energy_slot(d, delta, &p).unwrap();
            let ho = harvest_oracle(d, delta, &p);
            assert!((h - ho).abs() <= 1e-9 * ho.max(1e-300));
        }
    }

    #[test]
    fn consumption_terms() {
        let p = params();
        let pp = propulsion();
        let dt = p.slot_duration();
        assert!((consumption_energy_slot(0.0, 0.0, &p, &pp) - dt * (pp.blade_profile_w + pp.induced_w)).abs() < 1e-12);

        let mut q = p.clone();
        q.mission_time_s = q.slots as f64;
        let want = pp.blade_profile_w + pp.induced_w + q.backscatter_power_w + q.ub_power_w;
        assert!((consumption_energy_slot(0.0, 1.0, &q, &pp) - want).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let v = rng.random_range(0.0..30.0);
            let delta = rng.random_range(0.0..=1.0);
            let want = dt * flying_oracle(v, &pp) + delta * dt * p.backscatter_power_w + delta * dt * p.ub_power_w;
            assert!((consumption_energy_slot(v, delta, &p, &pp) - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn flying_power_continuous_near_hover() {
        let pp = propulsion();
        let hover = flying_power(0.0, &pp);
        assert!((flying_power(1e-9, &pp) - hover).abs() < 1e-9);
        // the induced radical never goes negative, even at absurd speed
        assert!(flying_power(1e4, &pp).is_finite());
    }
}
