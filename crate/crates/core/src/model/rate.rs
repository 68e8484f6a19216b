//! Ergodic achievable rates of the GBS → UB and UB → user hops.

use super::params::SystemParams;
use crate::error::ModelError;

fn check_distance(d: f64) -> Result<(), ModelError> {
    if d > 0.0 {
        Ok(())
    } else {
        Err(ModelError::NonPositiveDistance(d))
    }
}

/// Rate received at the UB (bit/s).
pub fn rate_uplink(d_su: f64, zeta: f64, p: &SystemParams) -> Result<f64, ModelError> {
    check_distance(d_su)?;
    let z2 = zeta * zeta;
    let noise = p.uplink_noise_w + (1.0 - z2) * p.estimation_noise_w;
    let snr = (-p.euler_gamma).exp() * p.ref_gain * z2 * p.source_power_w / (d_su.powf(p.path_loss_exponent) * noise);
    Ok(p.bandwidth_hz * snr.ln_1p() / std::f64::consts::LN_2)
}

/// Rate received at the end user (bit/s): the backscattered GBS signal plus
/// the UB's own cache transmission.
pub fn rate_downlink(d_su: f64, d_du: f64, zeta: f64, p: &SystemParams) -> Result<f64, ModelError> {
    check_distance(d_su)?;
    check_distance(d_du)?;
    let z2 = zeta * zeta;
    let leak = 1.0 - z2;
    let noise =
        p.downlink_noise_w + leak * p.estimation_noise_w + leak * leak * p.estimation_noise_w * p.estimation_noise_w;
    let a = p.path_loss_exponent;
    let signal = z2 * z2 * p.backscatter_coeff * p.ref_gain * p.source_power_w + z2 * p.cache_power_w() * d_su.powf(a);
    let snr = (-p.euler_gamma).exp() * p.ref_gain * signal / ((d_su * d_du).powf(a) * noise);
    Ok(p.bandwidth_hz * snr.ln_1p() / std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests_support::{params, random_params};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Straight transcription, kept apart from the production path. log2(1 + x)
    // is taken through ln_1p so tiny SNRs do not lose digits in the oracle.
    fn log2_1p(x: f64) -> f64 {
        x.ln_1p() / 2f64.ln()
    }

    fn uplink_oracle(d: f64, z: f64, p: &SystemParams) -> f64 {
        let sig_u = p.uplink_noise_w + (1.0 - z.powi(2)) * p.estimation_noise_w;
        let num = f64::exp(-0.5772156649) * p.ref_gain * z.powi(2) * p.source_power_w;
        p.bandwidth_hz * log2_1p(num / (d.powf(p.path_loss_exponent) * sig_u))
    }

    fn downlink_oracle(d_su: f64, d_du: f64, z: f64, p: &SystemParams) -> f64 {
        let sn2 = p.estimation_noise_w;
        let sig_d = p.downlink_noise_w + (1.0 - z.powi(2)) * sn2 + (1.0 - z.powi(2)).powi(2) * sn2.powi(2);
        let pu_bar = if p.cached_fraction > 0.0 { p.ub_power_w } else { 0.0 };
        let inner = z.powi(4) * p.backscatter_coeff * p.ref_gain * p.source_power_w
            + z.powi(2) * pu_bar * d_su.powf(p.path_loss_exponent);
        let num = f64::exp(-0.5772156649) * p.ref_gain * inner;
        let den = d_su.powf(p.path_loss_exponent) * d_du.powf(p.path_loss_exponent) * sig_d;
        p.bandwidth_hz * log2_1p(num / den)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn zero_source_power_gives_zero_rates() {
        let mut p = params();
        p.source_power_w = 0.0;
        assert_eq!(rate_uplink(30.0, 0.9, &p).unwrap(), 0.0);
        p.cached_fraction = 0.0;
        assert_eq!(rate_downlink(30.0, 70.0, 0.9, &p).unwrap(), 0.0);
    }

    #[test]
    fn constructed_unit_snr() {
        let mut p = params();
        p.bandwidth_hz = 1.0;
        p.ref_gain = 1.0;
        p.path_loss_exponent = 2.0;
        p.uplink_noise_w = 1.0;
        p.downlink_noise_w = 1.0;
        p.source_power_w = p.euler_gamma.exp();
        assert!((rate_uplink(1.0, 1.0, &p).unwrap() - 1.0).abs() < 1e-12);

        p.source_power_w = 0.0;
        p.cached_fraction = 1.0;
        p.ub_power_w = p.euler_gamma.exp();
        for d_su in [0.5, 1.0, 7.0, 123.0] {
            assert!((rate_downlink(d_su, 1.0, 1.0, &p).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_oracle_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..1000 {
            let p = random_params(&mut rng);
            let d_su = rng.random_range(1.0..500.0);
            let d_du = rng.random_range(1.0..500.0);
            let z = rng.random_range(0.0..=1.0);
            assert!(rel(rate_uplink(d_su, z, &p).unwrap(), uplink_oracle(d_su, z, &p)) < 1e-9);
            assert!(
                rel(
                    rate_downlink(d_su, d_du, z, &p).unwrap(),
                    downlink_oracle(d_su, d_du, z, &p)
                ) < 1e-9
            );
        }
    }

    #[test]
    fn monotone_in_distance_and_power() {
        let p = params();
        let mut prev_u = f64::INFINITY;
        let mut prev_d = f64::INFINITY;
        for k in 1..200 {
            let d = 10.0 + k as f64 * 2.0;
            let u = rate_uplink(d, 0.8, &p).unwrap();
            let dn = rate_downlink(60.0, d, 0.8, &p).unwrap();
            assert!(u < prev_u && u >= 0.0);
            assert!(dn < prev_d && dn >= 0.0);
            prev_u = u;
            prev_d = dn;
        }
        let mut q = p.clone();
        q.source_power_w *= 2.0;
        assert!(rate_uplink(50.0, 0.8, &q).unwrap() > rate_uplink(50.0, 0.8, &p).unwrap());
        assert!(rate_downlink(50.0, 50.0, 0.8, &q).unwrap() > rate_downlink(50.0, 50.0, 0.8, &p).unwrap());
    }

    #[test]
    fn rejects_nonpositive_distance() {
        let p = params();
        assert!(rate_uplink(0.0, 1.0, &p).is_err());
        assert!(rate_downlink(10.0, -1.0, 1.0, &p).is_err());
    }
}
