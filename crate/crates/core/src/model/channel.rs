//! Doppler-degraded channel estimate and a Monte-Carlo sampler of the
//! Rician small-scale fading. The sampler is only used for validation; the
//! rate formulas work on the closed-form ergodic approximation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::bessel::bessel_j0;
use super::params::SystemParams;
use crate::error::ModelError;

/// CSI quality factor ζ = J₀²(2π f_D T_b) with f_D = v f₀ / c.
pub fn doppler_factor(speed: f64, p: &SystemParams) -> f64 {
    let doppler_hz = speed * p.carrier_hz / p.light_speed_mps;
    let j = bessel_j0(2.0 * PI * doppler_hz * p.sampling_time_s);
    (j * j).clamp(0.0, 1.0)
}

/// One realization of the UB link under imperfect CSI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSample {
    /// Estimated coefficient ĥ = sqrt(ω₀ d^−α) h̃.
    pub estimate: Complex64,
    /// Estimation error ω ~ CN(0, 1).
    pub error: Complex64,
    /// Realized coefficient h = ζ ĥ + sqrt(1 − ζ²) ω.
    pub realized: Complex64,
    /// Small-scale fading h̃ (unit mean power).
    pub small_scale: Complex64,
    /// Deterministic LoS component h̄, unit modulus.
    pub los: Complex64,
    /// Scattered component ḧ ~ CN(0, 1).
    pub nlos: Complex64,
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draws one channel realization at distance `d` with Doppler factor `zeta`.
pub fn sample_channel<R: Rng + ?Sized>(
    d: f64,
    zeta: f64,
    p: &SystemParams,
    rng: &mut R,
) -> Result<ChannelSample, ModelError> {
    if !(d > 0.0) {
        return Err(ModelError::NonPositiveDistance(d));
    }
    let g = p.rician_factor;
    let los = Complex64::from_polar(1.0, -2.0 * PI * d / p.wavelength());
    let nlos = complex_normal(rng);
    let small_scale = los * (g / (1.0 + g)).sqrt() + nlos * (1.0 / (1.0 + g)).sqrt();
    let estimate = small_scale * (p.ref_gain * d.powf(-p.path_loss_exponent)).sqrt();
    let error = complex_normal(rng);
    let realized = if zeta >= 1.0 {
        estimate
    } else {
        estimate * zeta + error * (1.0 - zeta * zeta).sqrt()
    };
    Ok(ChannelSample {
        estimate,
        error,
        realized,
        small_scale,
        los,
        nlos,
    })
}
