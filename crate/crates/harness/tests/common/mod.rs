#![allow(dead_code)]

use ubopt::config::{reference, ScenarioConfig};

/// Reference scenario cut down to `slots` slots of the same duration.
pub fn small(slots: usize) -> ScenarioConfig {
    let mut cfg = reference();
    let slot_s = cfg.mission.mission_time_s / cfg.mission.slots as f64;
    cfg.mission.slots = slots;
    cfg.mission.mission_time_s = slot_s * slots as f64;
    cfg
}
