#![allow(dead_code)]

use noma_perf::fading::{gamma_cdf, sample_gain, FadingParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// 99.9% critical value of the one-sample Kolmogorov–Smirnov statistic,
/// times `sqrt(n)`.
pub const KS_CRITICAL_999: f64 = 1.9495;

/// KS distance between `n` sampled gains and the Gamma CDF.
pub fn ks_statistic(p: &FadingParams, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..n).map(|_| sample_gain(p, &mut rng)).collect();
    xs.sort_by(f64::total_cmp);
    let nf = n as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = gamma_cdf(p, x);
            (f - i as f64 / nf).max((i + 1) as f64 / nf - f)
        })
        .fold(0.0, f64::max)
}

pub fn db_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}
