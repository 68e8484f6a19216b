//! Small scenarios shared by the unit tests.

use crate::model::{Arena, AxisBounds, Position, PropulsionParams, SystemParams, EULER_GAMMA};
use crate::problem::{ModelOptions, Problem, Scenario};

pub fn scenario(slots: usize) -> Scenario {
    Scenario {
        params: SystemParams {
            bandwidth_hz: 1e6,
            ref_gain: 1e-3,
            path_loss_exponent: 2.0,
            harvest_efficiency: 0.8,
            source_power_w: 1.0,
            wpt_power_w: 1e5,
            ub_power_w: 0.1,
            backscatter_power_w: 1e-3,
            backscatter_coeff: 0.6,
            cached_fraction: 0.5,
            demand_rate_bps: 1e6,
            uplink_noise_w: 1e-11,
            downlink_noise_w: 1e-11,
            estimation_noise_w: 1e-11,
            rician_factor: 10.0,
            carrier_hz: 2.4e9,
            light_speed_mps: 3e8,
            sampling_time_s: 1e-3,
            mission_time_s: 5.0 * slots as f64,
            slots,
            altitude_m: 30.0,
            max_speed_mps: 20.0,
            euler_gamma: EULER_GAMMA,
            arena: Arena {
                x: AxisBounds::new(-50.0, 250.0),
                y: AxisBounds::new(-100.0, 100.0),
                z: AxisBounds::new(10.0, 100.0),
            },
        },
        propulsion: PropulsionParams {
            blade_profile_w: 0.2,
            induced_w: 1.0,
            lambda1: 3.0 / 3600.0,
            lambda2: 0.04,
            lambda3: 2e-4,
            rotor: None,
        },
        start: Position::new(0.0, 20.0, 30.0),
        end: Position::new(200.0, 20.0, 30.0),
        source: Position::new(0.0, 0.0, 0.0),
        destination: Position::new(200.0, 0.0, 0.0),
        options: ModelOptions::default(),
    }
}

pub fn problem(slots: usize) -> Problem {
    Problem::new(scenario(slots)).expect("fixture scenario is valid")
}
