//! Physical model of the GBS → UB → user link: geometry, Doppler-degraded
//! CSI, harvested and consumed energy, and the two ergodic rates.

pub mod bessel;
pub mod channel;
pub mod energy;
pub mod geometry;
pub mod params;
pub mod rate;

pub use bessel::bessel_j0;
pub use channel::{doppler_factor, sample_channel, ChannelSample};
pub use energy::{
    consumption_breakdown, consumption_energy_slot, flying_power, harvested_energy_slot, SlotConsumption,
};
pub use geometry::{distance, slot_speed, Position, TimeSplit, Trajectory};
pub use params::{Arena, AxisBounds, Lambda1Convention, PropulsionParams, RotorConstants, SystemParams, EULER_GAMMA};
pub use rate::{rate_downlink, rate_uplink};
