//! Exact outage of the far and near users with selection combining of the
//! direct and relayed copies.
//!
//! Each user's outage factors into a direct-link term (an order-statistic
//! CDF at a gain threshold) and a relay-branch term. The relay-branch term
//! has the Bessel-K closed form in [`relay_branch_outage`].

use crate::error::Result;
use crate::fading::{gamma_cdf_sf, ordered_cdf, FadingParams};
use crate::numerics::{bessel_k_regular_scaled, bessel_k_scaled, log_binomial, log_factorial, CompensatedSum};

use super::{check_rho, fixed_gain_constant, Scenario1Config};

const REGULAR_SPLIT_LIMIT: f64 = 2.0;

/// `P(XY/(X + C) < z)` for independent Gamma gains `Y` (BS→relay, mean
/// `omega_sr`) and `X` (relay→user, mean `omega_rd`) sharing shape `mu`.
///
/// Closed form:
/// `1 - 2μ^μ e^{-μz/ω_sr} / (ω_sr^μ Γ(μ)) Σ_k Σ_i (zC)^k/k! (μ/ω_rd)^k
///  C(μ-1,i) z^{μ-i-1} (zCω_sr/ω_rd)^{(i-k+1)/2} K_{i-k+1}(2μ√(zC/(ω_sr ω_rd)))`.
pub fn relay_branch_outage(mu: u32, omega_sr: f64, omega_rd: f64, c: f64, z: f64) -> f64 {
    if !(z > 0.0) {
        return 0.0;
    }
    if !z.is_finite() {
        return 1.0;
    }
    let muf = mu as f64;
    let arg = 2.0 * muf * (z * c / (omega_sr * omega_rd)).sqrt();
    let log_pref = std::f64::consts::LN_2 + muf * muf.ln() - muf * z / omega_sr - muf * omega_sr.ln()
        - log_factorial(mu - 1);
    let ln_z = z.ln();
    let ln_zc = (z * c).ln();
    let ln_ratio = (z * c * omega_sr / omega_rd).ln();
    let ln_rate = (muf / omega_rd).ln();
    let log_base = |k: u32, i: u32| {
        let order = i as f64 - k as f64 + 1.0;
        log_pref + k as f64 * (ln_zc + ln_rate) - log_factorial(k)
            + log_binomial(mu - 1, i)
            + (mu - i - 1) as f64 * ln_z
            + 0.5 * order * ln_ratio
    };

    if arg > REGULAR_SPLIT_LIMIT {
        let mut survive = CompensatedSum::new();
        for k in 0..mu {
            for i in 0..mu {
                let order = (i as i64 - k as i64 + 1).unsigned_abs() as u32;
                // K_{-v} = K_v
                let kv = bessel_k_scaled(order, arg).expect("positive Bessel argument");
                survive.add((log_base(k, i) + kv.ln() - arg).exp());
            }
        }
        return (1.0 - survive.value()).clamp(0.0, 1.0);
    }

    // The principal parts of the positive-order terms add up to exactly
    // P(Y > z), so removing them leaves P(Y <= z) minus a sum of terms that
    // are all of the size of the result, free of cancellation as z -> 0.
    let ln_half_arg = (0.5 * arg).ln();
    let mut rest = CompensatedSum::new();
    for k in 0..mu {
        for i in 0..mu {
            let base = log_base(k, i);
            if i + 1 > k {
                let order = i + 1 - k;
                let r = bessel_k_regular_scaled(order, arg).expect("positive Bessel argument");
                let mag = (base + order as f64 * ln_half_arg + r.abs().ln()).exp();
                rest.add(mag.copysign(r));
            } else {
                let kv = bessel_k_scaled(k - i - 1, arg).expect("positive Bessel argument");
                rest.add((base + kv.ln() - arg).exp());
            }
        }
    }
    let y = FadingParams { mu, omega: omega_sr };
    (gamma_cdf_sf(&y, z).0 - rest.value()).clamp(0.0, 1.0)
}

/// Direct-link outage of the far user, `P(|h_f|² < z)`.
pub fn theta1(cfg: &Scenario1Config, z: f64) -> f64 {
    ordered_cdf(&cfg.far_fading(), cfg.far_index(), z)
}

/// Relay-branch outage of the far user at gain threshold `z`, with relay
/// constant `c` (see [`fixed_gain_constant`]).
pub fn theta2_closed(cfg: &Scenario1Config, c: f64, z: f64) -> f64 {
    relay_branch_outage(cfg.mu, cfg.omega_sr, cfg.omega_rd_far, c, z)
}

/// Direct-link outage of the near user, `P(|h_n|² < z)`.
pub fn theta3(cfg: &Scenario1Config, z: f64) -> f64 {
    ordered_cdf(&cfg.near_fading(), cfg.near_index(), z)
}

/// Relay-branch outage of the near user at gain threshold `z`.
pub fn theta4_closed(cfg: &Scenario1Config, c: f64, z: f64) -> f64 {
    relay_branch_outage(cfg.mu, cfg.omega_sr, cfg.omega_rd_near, c, z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarOutage {
    pub direct: f64,
    pub relay: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearOutage {
    pub direct: f64,
    pub relay: f64,
    pub probability: f64,
}

const CERTAIN: FarOutage = FarOutage {
    direct: 1.0,
    relay: 1.0,
    probability: 1.0,
};

pub fn outage_far_terms(cfg: &Scenario1Config, rho: f64) -> Result<FarOutage> {
    cfg.validate()?;
    check_rho(rho)?;
    let Some(eps) = cfg.thresholds(rho).epsilon else {
        return Ok(CERTAIN);
    };
    let c = fixed_gain_constant(cfg, rho);
    let direct = theta1(cfg, eps);
    let relay = theta2_closed(cfg, c, eps);
    Ok(FarOutage {
        direct,
        relay,
        probability: direct * relay,
    })
}

pub fn outage_near_terms(cfg: &Scenario1Config, rho: f64) -> Result<NearOutage> {
    cfg.validate()?;
    check_rho(rho)?;
    let Some(omega) = cfg.thresholds(rho).omega else {
        return Ok(NearOutage {
            direct: 1.0,
            relay: 1.0,
            probability: 1.0,
        });
    };
    let c = fixed_gain_constant(cfg, rho);
    let direct = theta3(cfg, omega);
    let relay = theta4_closed(cfg, c, omega);
    Ok(NearOutage {
        direct,
        relay,
        probability: direct * relay,
    })
}

/// Outage probability of the far user.
pub fn outage_far_exact(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    outage_far_terms(cfg, rho).map(|o| o.probability)
}

/// Outage probability of the near user, which must decode the far message
/// before its own in whichever slot it uses.
pub fn outage_near_exact(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    outage_near_terms(cfg, rho).map(|o| o.probability)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::RelayGain;
    use crate::db_to_linear;

    #[test]
    fn certain_outage_when_far_message_undecodable() {
        let mut cfg = Scenario1Config::preset(1);
        cfg.rate_far = 1.5; // γ = 7 > a_f / a_n = 4
        assert_eq!(outage_far_exact(&cfg, 1e6).unwrap(), 1.0);
        assert_eq!(outage_near_exact(&cfg, 1e6).unwrap(), 1.0);
    }

    #[test]
    fn vanishing_snr_is_certain_outage() {
        for mu in 1..=3 {
            let cfg = Scenario1Config::preset(mu);
            for rho in [1e-8, 1e-12] {
                assert!((outage_far_exact(&cfg, rho).unwrap() - 1.0).abs() < 1e-12);
                assert!((outage_near_exact(&cfg, rho).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn relay_branch_limits() {
        assert_eq!(relay_branch_outage(2, 4.0, 4.0, 1.2, 0.0), 0.0);
        assert!((relay_branch_outage(2, 4.0, 4.0, 1.2, 1e4) - 1.0).abs() < 1e-12);
        assert!((relay_branch_outage(1, 4.0, 4.0, 1.2, 500.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rayleigh_relay_branch_single_term() {
        // μ = 1: 1 - e^{-z/ω_sr} · w K_1(w), w = 2√(zC/(ω_sr ω_rd))
        let (wsr, wrd, c, z) = (1.0, 1.0, 1.0, 0.1);
        let w = 2.0 * (z * c / (wsr * wrd) as f64).sqrt();
        let want = 1.0 - (-z / wsr).exp() * w * crate::numerics::bessel_k(1, w).unwrap();
        assert!((relay_branch_outage(1, wsr, wrd, c, z) - want).abs() < 1e-15);
    }

    #[test]
    fn factorisation_is_exact() {
        for mu in 1..=3 {
            let cfg = Scenario1Config::preset(mu);
            for db in [0.0, 10.0, 25.0, 40.0] {
                let rho = db_to_linear(db);
                let f = outage_far_terms(&cfg, rho).unwrap();
                assert_eq!(f.probability, f.direct * f.relay);
                let n = outage_near_terms(&cfg, rho).unwrap();
                assert_eq!(n.probability, n.direct * n.relay);
            }
        }
    }

    #[test]
    fn beta_dominates_with_weak_near_power() {
        let mut cfg = Scenario1Config::preset(1);
        cfg.power_far = 0.95;
        cfg.power_near = 0.05;
        let rho = 100.0;
        let t = cfg.thresholds(rho);
        assert!(t.beta > t.epsilon.unwrap());
        let c = fixed_gain_constant(&cfg, rho);
        let want = theta3(&cfg, t.beta) * theta4_closed(&cfg, c, t.beta);
        assert_eq!(outage_near_exact(&cfg, rho).unwrap(), want);
    }

    #[test]
    fn monotone_in_snr() {
        for gain in [RelayGain::Kappa(0.9), RelayGain::PowerNormalized] {
            for mu in 1..=3 {
                let mut cfg = Scenario1Config::preset(mu);
                cfg.relay_gain = gain;
                let mut prev = (1.0, 1.0);
                for i in 0..=60 {
                    let rho = db_to_linear(i as f64);
                    let f = outage_far_exact(&cfg, rho).unwrap();
                    let n = outage_near_exact(&cfg, rho).unwrap();
                    assert!((0.0..=1.0).contains(&f) && (0.0..=1.0).contains(&n));
                    assert!(f <= prev.0 + 1e-15 && n <= prev.1 + 1e-15, "mu={mu} db={i}");
                    prev = (f, n);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = Scenario1Config::preset(1);
        assert!(outage_far_exact(&cfg, 0.0).is_err());
        let mut bad = cfg.clone();
        bad.near = 6;
        assert!(outage_near_exact(&bad, 1.0).is_err());
    }

    #[test]
    fn relay_branch_keeps_relative_accuracy_at_small_thresholds() {
        // 40-digit references
        let c = 1.0 / 0.81;
        for (mu, z, want) in [
            (1, 1e-6, 1.501_770_304_174_741_9e-6),
            (2, 1e-3, 6.327_532_798_498_014_9e-7),
            (3, 1.5e-3, 1.438_895_910_538_294_3e-9),
            (3, 1e-6, 6.312_170_568_326_592_6e-19),
            (3, 3.0, 0.612_689_391_328_363_46),
        ] {
            let got = relay_branch_outage(mu, 4.0, 4.0, c, z);
            assert!((got - want).abs() <= 1e-12 * want, "mu={mu} z={z}: {got} vs {want}");
        }
    }
}
