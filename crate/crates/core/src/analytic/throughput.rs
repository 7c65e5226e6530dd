//! Delay-limited throughput and the OMA benchmark.
//!
//! The OMA benchmark schedules only the strongest user (rank `M`) with full
//! power and the sum rate `R_0 = Σ R_i`. In the cooperative deployment the
//! scheduled user still gets the relayed copy in the second slot, so its
//! SINR threshold is `2^{2R_0} - 1` and both branches must fail.

use crate::error::Result;
use crate::fading::{ordered_cdf, FadingParams, OrderedIndex};

use super::cooperative::relay_branch_outage;
use super::{
    check_rho, fixed_gain_constant, outage_all_users_s2, outage_far_exact, outage_near_exact,
    threshold_snr, Scenario1Config, Scenario2Config, ScenarioConfig,
};

/// `(1 - P_f) R_f + (1 - P_n) R_n` in BPCU.
pub fn throughput_s1(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    let pf = outage_far_exact(cfg, rho)?;
    let pn = outage_near_exact(cfg, rho)?;
    Ok((1.0 - pf) * cfg.rate_far + (1.0 - pn) * cfg.rate_near)
}

/// `Σ (1 - P_i) R_i` in BPCU.
pub fn throughput_s2(cfg: &Scenario2Config, rho: f64) -> Result<f64> {
    let p = outage_all_users_s2(cfg, rho)?;
    Ok(p.iter().zip(&cfg.rates).map(|(pi, r)| (1.0 - pi) * r).sum())
}

pub fn oma_outage_s1(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    let z = threshold_snr(cfg.rate_far + cfg.rate_near, 2) / rho;
    let best = OrderedIndex {
        rank: cfg.users,
        users: cfg.users,
    };
    let direct = ordered_cdf(&cfg.near_fading(), best, z);
    let c = fixed_gain_constant(cfg, rho);
    let relay = relay_branch_outage(cfg.mu, cfg.omega_sr, cfg.omega_rd_near, c, z);
    Ok(direct * relay)
}

pub fn oma_outage_s2(cfg: &Scenario2Config, rho: f64) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    let z = threshold_snr(cfg.rates.iter().sum(), 1) / rho;
    let best = OrderedIndex {
        rank: cfg.users,
        users: cfg.users,
    };
    let fading = FadingParams {
        mu: cfg.mu,
        omega: *cfg.omega.last().expect("validated non-empty"),
    };
    Ok(ordered_cdf(&fading, best, z))
}

pub fn outage_oma_baseline(cfg: &ScenarioConfig, rho: f64) -> Result<f64> {
    match cfg {
        ScenarioConfig::Cooperative(c) => oma_outage_s1(c, rho),
        ScenarioConfig::Direct(c) => oma_outage_s2(c, rho),
    }
}

/// `(1 - P_oma) R_0`.
pub fn throughput_oma(cfg: &ScenarioConfig, rho: f64) -> Result<f64> {
    let p = outage_oma_baseline(cfg, rho)?;
    let r0 = match cfg {
        ScenarioConfig::Cooperative(c) => c.rate_far + c.rate_near,
        ScenarioConfig::Direct(c) => c.rates.iter().sum(),
    };
    Ok((1.0 - p) * r0)
}
