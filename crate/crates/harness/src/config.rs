//! Scenario files: TOML with units in the key names.
//!
//! Powers are given in dBm (or dB relative to 1 W for the WPT transmitter),
//! gains and the Rician factor in dB. [`ScenarioConfig::to_scenario`]
//! applies the conversions and validates the result.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use ubopt_core::ga::GaConfig;
use ubopt_core::model::{
    Arena, AxisBounds, Lambda1Convention, Position, PropulsionParams, RotorConstants, SystemParams, EULER_GAMMA,
};
use ubopt_core::problem::{ModelOptions, PenaltyMode, Problem, RateWeighting, Scenario};
use ubopt_core::pso::{PsoConfig, VANILLA_INERTIA};
use ubopt_core::ModelError;

use crate::error::HarnessError;

/// Lowest admissible flight altitude; keeps UB-to-node distances positive.
pub const MIN_ALTITUDE_M: f64 = 1.0;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionConfig {
    pub slots: usize,
    pub mission_time_s: f64,
    pub altitude_m: f64,
    pub max_speed_mps: f64,
    pub start_m: [f64; 3],
    pub end_m: [f64; 3],
    pub source_m: [f64; 3],
    pub destination_m: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaConfig {
    pub x_m: [f64; 2],
    pub y_m: [f64; 2],
    pub z_m: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioConfig {
    pub bandwidth_hz: f64,
    pub ref_gain_db: f64,
    pub path_loss_exponent: f64,
    pub harvest_efficiency: f64,
    pub source_power_dbm: f64,
    /// dB relative to 1 W.
    pub wpt_power_db: f64,
    pub ub_power_dbm: f64,
    pub backscatter_power_dbm: f64,
    pub backscatter_coeff: f64,
    pub cached_fraction: f64,
    pub demand_rate_bps: f64,
    pub uplink_noise_dbm: f64,
    pub downlink_noise_dbm: f64,
    pub estimation_noise_dbm: f64,
    pub rician_factor_db: f64,
    pub carrier_hz: f64,
    #[serde(default = "default_light_speed")]
    pub light_speed_mps: f64,
    pub sampling_time_s: f64,
}

fn default_light_speed() -> f64 {
    299_792_458.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivedPropulsion {
    pub blade_profile_w: f64,
    pub induced_w: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

/// Exactly one of the two forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PropulsionConfig {
    Rotor(RotorConstants),
    Derived(DerivedPropulsion),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptionsConfig {
    pub penalty_mode: PenaltyMode,
    pub penalty_scale: f64,
    pub rate_weighting: RateWeighting,
    /// Use λ₁ = 3σ_t/(Ω²R²) when deriving from rotor constants.
    pub lambda1_literal: bool,
    pub fixed_altitude: bool,
}

impl Default for OptionsConfig {
    fn default() -> Self {
        let m = ModelOptions::default();
        Self {
            penalty_mode: m.penalty_mode,
            penalty_scale: m.penalty_scale,
            rate_weighting: m.rate_weighting,
            lambda1_literal: false,
            fixed_altitude: m.fixed_altitude,
        }
    }
}

/// Solver settings shared by every run of a scenario. Iteration counts are
/// derived from `budget` when it is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolversConfig {
    /// Fitness evaluations per run, identical for every solver.
    pub budget: Option<u64>,
    /// Population / swarm size used by every population-based solver.
    pub population: usize,
    pub vanilla_inertia: f64,
    pub ga: GaConfig,
    pub ipso: PsoConfig,
}

impl Default for SolversConfig {
    fn default() -> Self {
        Self {
            budget: None,
            population: 50,
            vanilla_inertia: VANILLA_INERTIA,
            ga: GaConfig::default(),
            ipso: PsoConfig::improved(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    pub mission: MissionConfig,
    pub arena: ArenaConfig,
    pub radio: RadioConfig,
    pub propulsion: PropulsionConfig,
    #[serde(default)]
    pub options: OptionsConfig,
    #[serde(default)]
    pub solvers: SolversConfig,
}

fn axis(b: [f64; 2]) -> AxisBounds {
    AxisBounds::new(b[0], b[1])
}

fn pos(a: [f64; 3]) -> Position {
    Position::from_array(a)
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Parse {
            source_name: "<string>".into(),
            message: e.to_string(),
        })
    }

    /// Canonical serialized form; the scenario hash is taken over it.
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("scenario config always serializes")
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml_string().as_bytes()))
    }

    /// Linear-unit scenario. The altitude is raised to [`MIN_ALTITUDE_M`]
    /// if configured lower.
    pub fn to_scenario(&self) -> Result<Scenario, HarnessError> {
        let m = &self.mission;
        let r = &self.radio;
        let mut issues = Vec::new();
        if m.slots == 0 {
            issues.push("mission.slots must be >= 1".to_string());
        }
        let params = SystemParams {
            bandwidth_hz: r.bandwidth_hz,
            ref_gain: db_to_linear(r.ref_gain_db),
            path_loss_exponent: r.path_loss_exponent,
            harvest_efficiency: r.harvest_efficiency,
            source_power_w: dbm_to_watts(r.source_power_dbm),
            wpt_power_w: db_to_linear(r.wpt_power_db),
            ub_power_w: dbm_to_watts(r.ub_power_dbm),
            backscatter_power_w: dbm_to_watts(r.backscatter_power_dbm),
            backscatter_coeff: r.backscatter_coeff,
            cached_fraction: r.cached_fraction,
            demand_rate_bps: r.demand_rate_bps,
            uplink_noise_w: dbm_to_watts(r.uplink_noise_dbm),
            downlink_noise_w: dbm_to_watts(r.downlink_noise_dbm),
            estimation_noise_w: dbm_to_watts(r.estimation_noise_dbm),
            rician_factor: db_to_linear(r.rician_factor_db),
            carrier_hz: r.carrier_hz,
            light_speed_mps: r.light_speed_mps,
            sampling_time_s: r.sampling_time_s,
            mission_time_s: m.mission_time_s,
            slots: m.slots.max(1),
            altitude_m: m.altitude_m.max(MIN_ALTITUDE_M),
            max_speed_mps: m.max_speed_mps,
            euler_gamma: EULER_GAMMA,
            arena: Arena {
                x: axis(self.arena.x_m),
                y: axis(self.arena.y_m),
                z: axis(self.arena.z_m),
            },
        };
        let propulsion = match self.propulsion {
            PropulsionConfig::Rotor(rotor) => {
                let convention = if self.options.lambda1_literal {
                    Lambda1Convention::Literal
                } else {
                    Lambda1Convention::TipSpeed
                };
                PropulsionParams::from_rotor(&rotor, convention, params.slot_duration())
            }
            PropulsionConfig::Derived(d) => PropulsionParams {
                blade_profile_w: d.blade_profile_w,
                induced_w: d.induced_w,
                lambda1: d.lambda1,
                lambda2: d.lambda2,
                lambda3: d.lambda3,
                rotor: None,
            },
        };
        let scenario = Scenario {
            params,
            propulsion,
            start: pos(m.start_m),
            end: pos(m.end_m),
            source: pos(m.source_m),
            destination: pos(m.destination_m),
            options: ModelOptions {
                penalty_mode: self.options.penalty_mode,
                penalty_scale: self.options.penalty_scale,
                rate_weighting: self.options.rate_weighting,
                fixed_altitude: self.options.fixed_altitude,
            },
        };
        match scenario.validate() {
            Ok(()) => {}
            Err(ModelError::InvalidParams(v)) => issues.extend(v),
            Err(e) => issues.push(e.to_string()),
        }
        if self.solvers.population < 2 {
            issues.push(format!(
                "solvers.population must be >= 2 (got {})",
                self.solvers.population
            ));
        }
        if issues.is_empty() {
            Ok(scenario)
        } else {
            Err(HarnessError::Invalid(issues))
        }
    }

    pub fn problem(&self) -> Result<Problem, HarnessError> {
        let scenario = self.to_scenario()?;
        Problem::new(scenario).map_err(|e| HarnessError::Invalid(vec![e.to_string()]))
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let cfg: ScenarioConfig = toml::from_str(&text).map_err(|e| HarnessError::Parse {
        source_name: path.display().to_string(),
        message: e.to_string(),
    })?;
    cfg.to_scenario()?;
    Ok(cfg)
}

pub fn save_config(cfg: &ScenarioConfig, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, cfg.to_toml_string()).map_err(|e| HarnessError::io(path, e))
}

/// The shipped reference scenario.
pub const REFERENCE_TOML: &str = include_str!("../scenarios/reference.toml");

pub fn reference() -> ScenarioConfig {
    ScenarioConfig::from_toml_str(REFERENCE_TOML).expect("reference scenario parses")
}
