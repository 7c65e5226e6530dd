//! High-SNR outage approximations.
//!
//! The direct-link factor uses the leading small-argument term of the
//! order-statistic CDF. The relay-branch factor is kept exact: its leading
//! term involves `∫_0^∞ x^{-1} e^{-μx/ω_sr} dx`, which diverges, so there is
//! no finite power-law replacement for it. The product still decays with
//! slope `μ(f+1)` (far) or `μ(n+1)` (near), up to the slowly varying log
//! factor of the relay branch.

use crate::error::Result;
use crate::fading::ordered_cdf_small_arg;

use super::cooperative::{theta2_closed, theta4_closed};
use super::direct::check_user;
use super::{check_rho, fixed_gain_constant, Scenario1Config, Scenario2Config};

pub fn outage_far_asymptotic(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    let Some(eps) = cfg.thresholds(rho).epsilon else {
        return Ok(1.0);
    };
    let c = fixed_gain_constant(cfg, rho);
    Ok(ordered_cdf_small_arg(&cfg.far_fading(), cfg.far_index(), eps) * theta2_closed(cfg, c, eps))
}

pub fn outage_near_asymptotic(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    let Some(omega) = cfg.thresholds(rho).omega else {
        return Ok(1.0);
    };
    let c = fixed_gain_constant(cfg, rho);
    Ok(ordered_cdf_small_arg(&cfg.near_fading(), cfg.near_index(), omega) * theta4_closed(cfg, c, omega))
}

/// `M!/((M-m)! m!) (μφ*/ω_m)^{μm} (1/μ!)^m`.
pub fn outage_user_asymptotic_s2(cfg: &Scenario2Config, rho: f64, user: usize) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    check_user(cfg, user)?;
    Ok(match cfg.thresholds(rho).phi_star(user) {
        Some(phi) => ordered_cdf_small_arg(&cfg.fading(user), cfg.index(user), phi),
        None => 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{outage_far_exact, outage_near_exact, outage_user_exact_s2, theta2_closed};
    use crate::db_to_linear;
    use crate::fading::cdf_small_arg;

    #[test]
    fn ratio_to_exact_at_high_snr() {
        let rho = db_to_linear(60.0);
        for mu in 1..=3 {
            let cfg = Scenario1Config::preset(mu);
            let r = outage_far_asymptotic(&cfg, rho).unwrap() / outage_far_exact(&cfg, rho).unwrap();
            assert!((r - 1.0).abs() < 0.05, "far mu={mu}: {r}");
            let r = outage_near_asymptotic(&cfg, rho).unwrap() / outage_near_exact(&cfg, rho).unwrap();
            assert!((r - 1.0).abs() < 0.05, "near mu={mu}: {r}");
            let s2 = Scenario2Config::preset(mu);
            for u in 1..=3 {
                let r = outage_user_asymptotic_s2(&s2, rho, u).unwrap()
                    / outage_user_exact_s2(&s2, rho, u).unwrap();
                assert!((r - 1.0).abs() < 0.05, "s2 mu={mu} user={u}: {r}");
            }
        }
    }

    #[test]
    fn single_user_prefactor_is_one() {
        let mut cfg = Scenario1Config::preset(2);
        cfg.users = 2;
        cfg.near = 2;
        let rho = 1e4;
        let eps = cfg.thresholds(rho).epsilon.unwrap();
        let c = fixed_gain_constant(&cfg, rho);
        // f = 1 of M = 2 has prefactor M!/((M-1)!1!) = 2
        let want = 2.0 * cdf_small_arg(&cfg.far_fading(), eps) * theta2_closed(&cfg, c, eps);
        let got = outage_far_asymptotic(&cfg, rho).unwrap();
        assert!((got - want).abs() < 1e-14 * want);

        let s2 = Scenario2Config::new(vec![1.0], vec![1.0], vec![1.3], 2);
        let phi = s2.thresholds(rho).phi_star(1).unwrap();
        assert_eq!(outage_user_asymptotic_s2(&s2, rho, 1).unwrap(), cdf_small_arg(&s2.fading(1), phi));
    }

    #[test]
    fn condition_violation() {
        let mut cfg = Scenario1Config::preset(1);
        cfg.rate_far = 1.5;
        assert_eq!(outage_far_asymptotic(&cfg, 1e6).unwrap(), 1.0);
        assert_eq!(outage_near_asymptotic(&cfg, 1e6).unwrap(), 1.0);
    }

    fn slope(lo_db: f64, hi_db: f64, f: impl Fn(f64) -> f64) -> f64 {
        let curve: Vec<(f64, f64)> = (0..=30)
            .map(|i| {
                let rho = db_to_linear(lo_db + (hi_db - lo_db) * i as f64 / 30.0);
                (rho, f(rho))
            })
            .collect();
        crate::analytic::diversity_order_fit(&curve).unwrap()
    }

    #[test]
    fn direct_link_slopes_are_exact_powers() {
        let cfg = Scenario2Config::preset(1);
        for m in 1..=3 {
            let d = slope(45.0, 60.0, |r| outage_user_asymptotic_s2(&cfg, r, m).unwrap());
            assert!((d - m as f64).abs() < 0.02 * m as f64, "user {m}: {d}");
        }
    }

    #[test]
    fn relay_slopes_approach_the_diversity_order_from_below() {
        // The relay branch behaves like z^mu ln(1/z), so a finite window
        // reads a little short of the nominal order and closes in slowly.
        let mut near_cfg = Scenario1Config::preset(1);
        near_cfg.users = 3;
        near_cfg.near = 2;
        let cases: [(Scenario1Config, bool, f64); 3] = [
            (Scenario1Config::preset(1), true, 2.0),
            (Scenario1Config::preset(2), true, 4.0),
            (near_cfg, false, 3.0),
        ];
        for (cfg, far, order) in cases {
            let p = |r: f64| {
                if far {
                    outage_far_asymptotic(&cfg, r).unwrap()
                } else {
                    outage_near_asymptotic(&cfg, r).unwrap()
                }
            };
            let low = slope(45.0, 60.0, p);
            let high = slope(105.0, 120.0, p);
            assert!(low < order && low > 0.95 * order, "mu={} far={far}: {low}", cfg.mu);
            assert!(high > low && high < order, "mu={} far={far}: {low} -> {high}", cfg.mu);
            if cfg.mu == 2 {
                assert!(low > 0.98 * order, "{low}");
            }
        }
    }
}
