use crate::error::{Error, Result};
use crate::fading::ordered_cdf;

use super::{check_rho, Scenario2Config};

/// Outage probability of served user `user` (1-based, weakest first): the
/// probability that its sorted gain falls below the largest gain threshold
/// among the messages it has to decode.
pub fn outage_user_exact_s2(cfg: &Scenario2Config, rho: f64, user: usize) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    check_user(cfg, user)?;
    Ok(exact_unchecked(cfg, rho, user))
}

/// Outage of every served user, in order.
pub fn outage_all_users_s2(cfg: &Scenario2Config, rho: f64) -> Result<Vec<f64>> {
    cfg.validate()?;
    check_rho(rho)?;
    Ok((1..=cfg.served()).map(|u| exact_unchecked(cfg, rho, u)).collect())
}

fn exact_unchecked(cfg: &Scenario2Config, rho: f64, user: usize) -> f64 {
    match cfg.thresholds(rho).phi_star(user) {
        Some(phi) => ordered_cdf(&cfg.fading(user), cfg.index(user), phi),
        None => 1.0,
    }
}

pub(crate) fn check_user(cfg: &Scenario2Config, user: usize) -> Result<()> {
    if user == 0 || user > cfg.served() {
        return Err(Error::Domain(format!(
            "user index {user} outside 1..={}",
            cfg.served()
        )));
    }
    Ok(())
}
