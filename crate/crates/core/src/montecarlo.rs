//! Link-level Monte Carlo simulator.
//!
//! Channels are sampled, the per-slot SINRs are evaluated exactly as the
//! receivers see them, and outage is declared from the SINRs, never from the
//! gain thresholds used by the closed forms.
//!
//! Random streams are counter based: every trial consumes a fixed number of
//! uniforms from a ChaCha8 stream keyed by the seed, and trial `t` starts at
//! word `t * words_per_trial`. A chunk seeks straight to its first trial, so
//! the result does not depend on how the trials are split across chunks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::{fixed_gain_constant, threshold_snr, Scenario1Config, Scenario2Config};
use crate::error::{Error, Result};
use crate::fading::sample_unit_erlang;

const STREAM_COOPERATIVE: u64 = 1;
const STREAM_DIRECT: u64 = 2;
const STREAM_RELAY_BRANCH: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialBatch {
    pub trials: u64,
    pub seed: u64,
    /// Number of independent partitions evaluated in parallel.
    pub chunks: u32,
}

impl TrialBatch {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            chunks: default_chunks(trials),
        }
    }

    pub fn with_chunks(self, chunks: u32) -> Self {
        Self { chunks, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.chunks == 0 {
            return Err(Error::config("chunks", "must be at least 1"));
        }
        Ok(())
    }

    fn ranges(&self) -> Vec<(u64, u64)> {
        let (t, c) = (self.trials as u128, self.chunks as u128);
        (0..c)
            .map(|k| ((k * t / c) as u64, ((k + 1) * t / c) as u64))
            .filter(|(a, b)| b > a)
            .collect()
    }
}

fn default_chunks(trials: u64) -> u32 {
    (trials / 250_000).clamp(1, 64) as u32
}

/// Bernoulli probability estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl Estimate {
    pub fn from_counts(events: u64, trials: u64) -> Self {
        let p_hat = events as f64 / trials as f64;
        Self {
            p_hat,
            stderr: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
            trials,
        }
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// One realisation of every link in the cooperative deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    /// Sorted BS→user gains drawn with the far user's `omega_sd`.
    pub h_sd: Vec<f64>,
    pub h_sr: f64,
    pub h_rd_far: f64,
    pub h_rd_near: f64,
}

impl ChannelDraw {
    /// Consumes `(users + 3) * mu` uniforms.
    pub fn sample<R: Rng + ?Sized>(cfg: &Scenario1Config, rng: &mut R) -> Self {
        let mut draw = ChannelDraw {
            h_sd: vec![0.0; cfg.users as usize],
            h_sr: 0.0,
            h_rd_far: 0.0,
            h_rd_near: 0.0,
        };
        draw.resample(cfg, rng);
        draw
    }

    fn resample<R: Rng + ?Sized>(&mut self, cfg: &Scenario1Config, rng: &mut R) {
        let mu = cfg.mu;
        let unit = 1.0 / mu as f64;
        for h in self.h_sd.iter_mut() {
            *h = cfg.omega_sd_far * unit * sample_unit_erlang(mu, rng);
        }
        self.h_sd.sort_unstable_by(f64::total_cmp);
        self.h_sr = cfg.omega_sr * unit * sample_unit_erlang(mu, rng);
        self.h_rd_far = cfg.omega_rd_far * unit * sample_unit_erlang(mu, rng);
        self.h_rd_near = cfg.omega_rd_near * unit * sample_unit_erlang(mu, rng);
    }

    fn far_gain(&self, cfg: &Scenario1Config) -> f64 {
        self.h_sd[cfg.far as usize - 1]
    }

    /// Scaling commutes with sorting, so a different near-user mean power is
    /// applied to the same order statistic.
    fn near_gain(&self, cfg: &Scenario1Config) -> f64 {
        self.h_sd[cfg.near as usize - 1] * (cfg.omega_sd_near / cfg.omega_sd_far)
    }
}

/// SINRs of the direct (first) slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotSinr {
    /// Far user decoding its own message.
    pub far: f64,
    /// Near user decoding the far message (SIC stage).
    pub far_at_near: f64,
    /// Near user decoding its own message after SIC.
    pub near: f64,
}

pub fn sinr_slot1(draw: &ChannelDraw, cfg: &Scenario1Config, rho: f64) -> SlotSinr {
    let hf = draw.far_gain(cfg);
    let hn = draw.near_gain(cfg);
    let (af, an) = (cfg.power_far, cfg.power_near);
    SlotSinr {
        far: hf * af * rho / (hf * an * rho + 1.0),
        far_at_near: hn * af * rho / (hn * an * rho + 1.0),
        near: hn * an * rho,
    }
}

/// SINRs of the relayed (second) slot with relay constant `c`.
pub fn sinr_slot2(draw: &ChannelDraw, cfg: &Scenario1Config, rho: f64, c: f64) -> SlotSinr {
    let (af, an) = (cfg.power_far, cfg.power_near);
    let sf = draw.h_sr * draw.h_rd_far;
    let sn = draw.h_sr * draw.h_rd_near;
    SlotSinr {
        far: sf * af * rho / (sf * an * rho + draw.h_rd_far + c),
        far_at_near: sn * af * rho / (sn * an * rho + draw.h_rd_near + c),
        near: sn * an * rho / (draw.h_rd_near + c),
    }
}

/// Outage indicators `(far, near)` for one draw.
pub fn cooperative_outage(draw: &ChannelDraw, cfg: &Scenario1Config, rho: f64, c: f64) -> (bool, bool) {
    let gf = threshold_snr(cfg.rate_far, 2);
    let gn = threshold_snr(cfg.rate_near, 2);
    let s1 = sinr_slot1(draw, cfg, rho);
    let s2 = sinr_slot2(draw, cfg, rho, c);
    let far = s1.far < gf && s2.far < gf;
    let near_ok = (s1.far_at_near >= gf && s1.near >= gn) || (s2.far_at_near >= gf && s2.near >= gn);
    (far, !near_ok)
}

/// Outage estimates for both users of the cooperative deployment plus the
/// system throughput, all from the same draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CooperativeEstimates {
    pub far: Estimate,
    pub near: Estimate,
    pub throughput: MeanEstimate,
}

pub fn estimate_cooperative(cfg: &Scenario1Config, rho: f64, batch: &TrialBatch) -> Result<CooperativeEstimates> {
    cfg.validate()?;
    batch.validate()?;
    let c = fixed_gain_constant(cfg, rho);
    let words = 2 * (cfg.users as u64 + 3) * cfg.mu as u64;
    // [far outage, near outage, both succeed]
    let counts = run_chunks(batch, STREAM_COOPERATIVE, words, 3, |rng, n, acc| {
        let mut draw = ChannelDraw::sample(cfg, rng);
        for t in 0..n {
            if t > 0 {
                draw.resample(cfg, rng);
            }
            let (f, nr) = cooperative_outage(&draw, cfg, rho, c);
            acc[0] += f as u64;
            acc[1] += nr as u64;
            acc[2] += (!f && !nr) as u64;
        }
    });
    let t = batch.trials;
    let far = Estimate::from_counts(counts[0], t);
    let near = Estimate::from_counts(counts[1], t);
    let success = [t - counts[0], t - counts[1]];
    let joint = [[success[0], counts[2]], [counts[2], success[1]]];
    let throughput = rate_weighted(&[cfg.rate_far, cfg.rate_near], &success, &joint, t);
    Ok(CooperativeEstimates { far, near, throughput })
}

pub fn estimate_outage_far(cfg: &Scenario1Config, rho: f64, batch: &TrialBatch) -> Result<Estimate> {
    estimate_cooperative(cfg, rho, batch).map(|e| e.far)
}

pub fn estimate_outage_near(cfg: &Scenario1Config, rho: f64, batch: &TrialBatch) -> Result<Estimate> {
    estimate_cooperative(cfg, rho, batch).map(|e| e.near)
}

/// SINR at served user `m` when decoding user `i`'s message (`i <= m`),
/// both 1-based. The last served user sees no residual interference.
pub fn sinr_s2(gain: f64, cfg: &Scenario2Config, rho: f64, i: usize, m: usize) -> f64 {
    debug_assert!(1 <= i && i <= m && m <= cfg.served());
    let a = cfg.power[i - 1];
    if i == cfg.served() {
        gain * a * rho
    } else {
        gain * a * rho / (rho * gain * cfg.residual_power(i) + 1.0)
    }
}

/// Whether served user `m` fails to decode any of the messages `1..=m`.
pub fn direct_outage(gain: f64, cfg: &Scenario2Config, rho: f64, m: usize, gamma: &[f64]) -> bool {
    (1..=m).any(|i| sinr_s2(gain, cfg, rho, i, m) < gamma[i - 1])
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectEstimates {
    pub users: Vec<Estimate>,
    pub throughput: MeanEstimate,
}

/// Every served user's outage and the system throughput.
///
/// Each trial draws `users` i.i.d. unit-mean gains and sorts them; served
/// user `m` sees its rank's order statistic scaled by its own `omega`.
pub fn estimate_direct(cfg: &Scenario2Config, rho: f64, batch: &TrialBatch) -> Result<DirectEstimates> {
    cfg.validate()?;
    batch.validate()?;
    let k = cfg.served();
    let gamma: Vec<f64> = cfg.rates.iter().map(|&r| threshold_snr(r, 1)).collect();
    let words = 2 * cfg.users as u64 * cfg.mu as u64;
    // k outage counts, then the k×k joint-success table
    let counts = run_chunks(batch, STREAM_DIRECT, words, k + k * k, |rng, n, acc| {
        let mut sorted = vec![0.0; cfg.users as usize];
        let mut ok = vec![false; k];
        let unit = 1.0 / cfg.mu as f64;
        for _ in 0..n {
            for g in sorted.iter_mut() {
                *g = unit * sample_unit_erlang(cfg.mu, rng);
            }
            sorted.sort_unstable_by(f64::total_cmp);
            for m in 1..=k {
                let gain = cfg.omega[m - 1] * sorted[cfg.ranks[m - 1] as usize - 1];
                let out = direct_outage(gain, cfg, rho, m, &gamma);
                acc[m - 1] += out as u64;
                ok[m - 1] = !out;
            }
            for i in 0..k {
                if ok[i] {
                    for j in 0..k {
                        acc[k + i * k + j] += ok[j] as u64;
                    }
                }
            }
        }
    });
    let t = batch.trials;
    let users = (0..k).map(|m| Estimate::from_counts(counts[m], t)).collect();
    let success: Vec<u64> = (0..k).map(|m| t - counts[m]).collect();
    let joint: Vec<Vec<u64>> = (0..k).map(|i| counts[k + i * k..k + (i + 1) * k].to_vec()).collect();
    let throughput = rate_weighted(&cfg.rates, &success, &joint, t);
    Ok(DirectEstimates { users, throughput })
}

pub fn estimate_outage_s2(cfg: &Scenario2Config, rho: f64, m: usize, batch: &TrialBatch) -> Result<Estimate> {
    if m == 0 || m > cfg.served() {
        return Err(Error::Domain(format!("user index {m} outside 1..={}", cfg.served())));
    }
    estimate_direct(cfg, rho, batch).map(|e| e.users[m - 1])
}

/// Direct simulation of the relay-branch outage event
/// `X (Y - z) < z C` (or `Y <= z`), with `Y ~ Gamma(mu, omega_sr)` and
/// `X ~ Gamma(mu, omega_rd)`.
pub fn estimate_relay_branch(
    mu: u32,
    omega_sr: f64,
    omega_rd: f64,
    c: f64,
    z: f64,
    batch: &TrialBatch,
) -> Result<Estimate> {
    batch.validate()?;
    let unit = 1.0 / mu as f64;
    let counts = run_chunks(batch, STREAM_RELAY_BRANCH, 4 * mu as u64, 1, |rng, n, acc| {
        for _ in 0..n {
            let y = omega_sr * unit * sample_unit_erlang(mu, rng);
            let x = omega_rd * unit * sample_unit_erlang(mu, rng);
            acc[0] += (y <= z || x * (y - z) < z * c) as u64;
        }
    });
    Ok(Estimate::from_counts(counts[0], batch.trials))
}

/// Mean and standard error of `Σ R_i 1{success_i}` from success counts and
/// the pairwise joint-success table.
fn rate_weighted<J: AsRef<[u64]>>(rates: &[f64], success: &[u64], joint: &[J], trials: u64) -> MeanEstimate {
    let t = trials as f64;
    let p: Vec<f64> = success.iter().map(|&s| s as f64 / t).collect();
    let mean = rates.iter().zip(&p).map(|(r, pi)| r * pi).sum();
    let mut var = 0.0;
    for i in 0..rates.len() {
        for j in 0..rates.len() {
            let pij = joint[i].as_ref()[j] as f64 / t;
            var += rates[i] * rates[j] * (pij - p[i] * p[j]);
        }
    }
    MeanEstimate {
        mean,
        stderr: (var.max(0.0) / t).sqrt(),
        trials,
    }
}

/// Runs `body(rng, n, counts)` on each chunk with the stream positioned at
/// the chunk's first trial and sums the integer counters.
fn run_chunks<F>(batch: &TrialBatch, stream: u64, words_per_trial: u64, width: usize, body: F) -> Vec<u64>
where
    F: Fn(&mut ChaCha8Rng, u64, &mut [u64]) + Sync,
{
    batch
        .ranges()
        .into_par_iter()
        .map(|(start, end)| {
            let mut rng = ChaCha8Rng::seed_from_u64(batch.seed);
            rng.set_stream(stream);
            rng.set_word_pos(start as u128 * words_per_trial as u128);
            let mut acc = vec![0u64; width];
            body(&mut rng, end - start, &mut acc);
            acc
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::RelayGain;

    fn draw(h_sd: Vec<f64>, h_sr: f64, h_rd: f64) -> ChannelDraw {
        ChannelDraw {
            h_sd,
            h_sr,
            h_rd_far: h_rd,
            h_rd_near: h_rd,
        }
    }

    #[test]
    fn slot1_sinr_values() {
        let cfg = Scenario1Config::preset(1);
        let d = draw(vec![1.0, 1.0, 1.0, 1.0, 2.0], 1.0, 1.0);
        let s = sinr_slot1(&d, &cfg, 10.0);
        assert!((s.far - 8.0 / 3.0).abs() < 1e-15);
        assert!((s.near - 2.0 * 0.2 * 10.0).abs() < 1e-15);
        // interference-limited ceiling
        let s = sinr_slot1(&d, &cfg, 1e12);
        assert!((s.far - 4.0).abs() < 1e-9);
        // no interference
        let mut cfg0 = cfg.clone();
        cfg0.power_far = 1.0;
        cfg0.power_near = 0.0;
        assert_eq!(sinr_slot1(&d, &cfg0, 10.0).far, 10.0);
    }

    #[test]
    fn slot2_sinr_values() {
        let cfg = Scenario1Config::preset(1);
        let d = draw(vec![1.0; 5], 1.0, 1.0);
        let c = fixed_gain_constant(&cfg, 10.0);
        let s = sinr_slot2(&d, &cfg, 10.0, c);
        assert!((s.near - 2.0 / (1.0 + 1.0 / 0.81)).abs() < 1e-12);
        assert!((s.near - 0.895_03).abs() < 1e-5);
        assert!((sinr_slot2(&d, &cfg, 1e12, c).far - 4.0).abs() < 1e-9);
        let s = sinr_slot2(&d, &cfg, 10.0, 1e300);
        assert!(s.far < 1e-290 && s.near < 1e-290 && s.far_at_near < 1e-290);
    }

    #[test]
    fn s2_sinr_values() {
        let cfg = Scenario2Config::new(vec![0.5, 0.5], vec![1.0, 1.0], vec![1.0, 1.0], 1);
        assert!((sinr_s2(1.0, &cfg, 1.0, 1, 2) - 0.5 / 1.5).abs() < 1e-15);
        assert_eq!(sinr_s2(2.0, &cfg, 3.0, 2, 2), 2.0 * 0.5 * 3.0);
        let cfg = Scenario2Config::preset(1);
        assert!((sinr_s2(1.0, &cfg, 1e12, 1, 3) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_thresholds_never_outage() {
        let mut cfg = Scenario1Config::preset(1);
        cfg.rate_far = 0.0;
        cfg.rate_near = 0.0;
        // validation rejects zero rates; evaluate the event directly
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = fixed_gain_constant(&cfg, 10.0);
        for _ in 0..10_000 {
            let d = ChannelDraw::sample(&cfg, &mut rng);
            assert_eq!(cooperative_outage(&d, &cfg, 10.0, c), (false, false));
        }
    }

    #[test]
    fn seeds_are_deterministic_and_chunk_invariant() {
        let cfg = Scenario1Config::preset(2);
        let b = TrialBatch::new(20_001, 99);
        let a = estimate_cooperative(&cfg, 10.0, &b.with_chunks(1)).unwrap();
        let again = estimate_cooperative(&cfg, 10.0, &b.with_chunks(1)).unwrap();
        assert_eq!(a, again);
        for chunks in [2, 3, 7, 64] {
            assert_eq!(a, estimate_cooperative(&cfg, 10.0, &b.with_chunks(chunks)).unwrap());
        }
        let s2 = Scenario2Config::preset(1);
        let x = estimate_direct(&s2, 30.0, &b.with_chunks(1)).unwrap();
        assert_eq!(x, estimate_direct(&s2, 30.0, &b.with_chunks(5)).unwrap());
        assert_ne!(x, estimate_direct(&s2, 30.0, &TrialBatch::new(20_001, 100)).unwrap());
    }

    #[test]
    fn sinr_events_match_threshold_events() {
        for (mu, gain) in [(1, RelayGain::Kappa(0.9)), (2, RelayGain::PowerNormalized), (3, RelayGain::Kappa(0.5))] {
            let mut cfg = Scenario1Config::preset(mu);
            cfg.relay_gain = gain;
            let mut rng = ChaCha8Rng::seed_from_u64(mu as u64);
            for &rho in &[3.0, 30.0, 300.0] {
                let c = fixed_gain_constant(&cfg, rho);
                let th = cfg.thresholds(rho);
                let (eps, om) = (th.epsilon.unwrap(), th.omega.unwrap());
                for _ in 0..100_000 {
                    let d = ChannelDraw::sample(&cfg, &mut rng);
                    let (far, near) = cooperative_outage(&d, &cfg, rho, c);
                    let relay_fails = |z: f64, x: f64| !(d.h_sr > z && x * (d.h_sr - z) >= z * c);
                    assert_eq!(far, d.h_sd[0] < eps && relay_fails(eps, d.h_rd_far));
                    assert_eq!(near, d.h_sd[4] < om && relay_fails(om, d.h_rd_near));
                }
            }
        }
        let cfg = Scenario2Config::preset(2);
        let gamma: Vec<f64> = cfg.rates.iter().map(|&r| threshold_snr(r, 1)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &rho in &[10.0, 100.0] {
            let th = cfg.thresholds(rho);
            for _ in 0..100_000 {
                let gain = 3.0 * rng.random::<f64>();
                for m in 1..=3 {
                    let phi = th.phi_star(m).unwrap();
                    assert_eq!(direct_outage(gain, &cfg, rho, m, &gamma), gain < phi);
                }
            }
        }
    }

    #[test]
    fn violated_condition_is_certain() {
        let mut cfg = Scenario1Config::preset(1);
        cfg.rate_far = 1.5;
        let e = estimate_cooperative(&cfg, 1e4, &TrialBatch::new(10_000, 1)).unwrap();
        assert_eq!((e.far.p_hat, e.far.stderr), (1.0, 0.0));
        assert_eq!((e.near.p_hat, e.near.stderr), (1.0, 0.0));
        assert_eq!(e.throughput.mean, 0.0);
    }

    #[test]
    fn stderr_halves_with_four_times_trials() {
        let cfg = Scenario2Config::preset(1);
        let a = estimate_outage_s2(&cfg, 10.0, 1, &TrialBatch::new(100_000, 3)).unwrap();
        let b = estimate_outage_s2(&cfg, 10.0, 1, &TrialBatch::new(400_000, 4)).unwrap();
        let ratio = a.stderr / b.stderr;
        assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn rejects_empty_batch() {
        let cfg = Scenario2Config::preset(1);
        assert!(estimate_direct(&cfg, 1.0, &TrialBatch::new(0, 1)).is_err());
        assert!(estimate_direct(&cfg, 1.0, &TrialBatch::new(10, 1).with_chunks(0)).is_err());
    }
}
