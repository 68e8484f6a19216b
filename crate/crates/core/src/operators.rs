//! Stochastic building blocks shared by the GA and the PSO.
//!
//! Every function draws from the caller's RNG in a fixed order, so a seeded
//! run is reproducible regardless of how evaluations are scheduled.

use rand::Rng;
use rand_distr::StandardNormal;

/// `mean + std · N(0, 1)` per gene, not clamped.
pub fn gaussian_sample<R: Rng + ?Sized>(mean: &[f64], std_dev: f64, rng: &mut R) -> Vec<f64> {
    mean.iter()
        .map(|&m| {
            let z: f64 = rng.sample(StandardNormal);
            m + std_dev * z
        })
        .collect()
}

/// Adds `N(0, std²)` to each gene independently with probability `rate`.
/// No clamping; callers apply the problem's adjustment afterwards.
pub fn gaussian_perturb<R: Rng + ?Sized>(genes: &mut [f64], rate: f64, std_dev: f64, rng: &mut R) {
    if rate <= 0.0 {
        return;
    }
    for g in genes.iter_mut() {
        if rate >= 1.0 || rng.random::<f64>() < rate {
            let z: f64 = rng.sample(StandardNormal);
            *g += std_dev * z;
        }
    }
}

/// Index drawn with probability proportional to `weights`; uniform when
/// the weights sum to zero.
pub fn roulette_pick<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    debug_assert!(!weights.is_empty());
    let total: f64 = weights.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return rng.random_range(0..weights.len());
    }
    let mut target = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if target < w {
            return i;
        }
        target -= w;
    }
    // round-off can leave target marginally above the last bucket
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(weights.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roulette_three_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 100_000;
        let hits = (0..n).filter(|_| roulette_pick(&[3.0, 1.0], &mut rng) == 0).count();
        let f = hits as f64 / n as f64;
        assert!((f - 0.75).abs() < 0.01, "{f}");
    }

    #[test]
    fn roulette_uniform_for_equal_or_zero_weights() {
        for weights in [vec![1.0; 4], vec![0.0; 4]] {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let n = 100_000;
            let mut counts = [0usize; 4];
            for _ in 0..n {
                counts[roulette_pick(&weights, &mut rng)] += 1;
            }
            for c in counts {
                assert!((c as f64 / n as f64 - 0.25).abs() < 0.01, "{counts:?}");
            }
        }
    }

    #[test]
    fn perturb_rate_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut g = vec![0.1, 0.5, 0.9];
        gaussian_perturb(&mut g, 0.0, 1.0, &mut rng);
        assert_eq!(g, vec![0.1, 0.5, 0.9]);
    }

    #[test]
    fn sample_std_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let draws = gaussian_sample(&vec![0.5; 10_000], 0.3, &mut rng);
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (draws.len() - 1) as f64;
        assert!((var.sqrt() - 0.3).abs() < 0.01, "{}", var.sqrt());
    }
}
