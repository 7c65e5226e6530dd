//! The multinomial-expansion forms of the order-statistic outage.
//!
//! `F_(m)(x)` is expanded through `F(x)^{m+i} = (1 - e^{-ψ} Σ_k ψ^k/k!)^{m+i}`
//! and the multinomial theorem, with `ψ = μx/ω`. The alternating terms are
//! accumulated in log space with sign tracking; still, the expansion loses
//! relative precision once `F(x)` is small, so the production path uses
//! [`crate::fading::ordered_cdf`] and these functions serve as cross-checks.

use crate::error::Result;
use crate::fading::{FadingParams, OrderedIndex};
use crate::numerics::{compositions, log_binomial, log_factorial, log_multinomial, SignedLogSum};

use super::cooperative::theta2_closed;
use super::direct::check_user;
use super::{check_rho, fixed_gain_constant, Scenario1Config, Scenario2Config};

/// `M!/((m-1)!(M-m)!) Σ_i C(M-m,i) (-1)^i/(m+i) Σ_q C(m+i,q) (-1)^q e^{-qψ}
///  Σ_{p_0+…+p_{μ-1}=q} (q; p) Π_k (ψ^k/k!)^{p_k}`.
pub fn ordered_cdf_series(p: &FadingParams, idx: OrderedIndex, x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    let psi = p.mu as f64 * x / p.omega;
    let ln_psi = psi.ln();
    let (m, n) = (idx.rank, idx.users);
    let pref = log_factorial(n) - log_factorial(m - 1) - log_factorial(n - m);

    let mut total = SignedLogSum::new();
    for i in 0..=(n - m) {
        let outer = pref + log_binomial(n - m, i) - ((m + i) as f64).ln();
        for q in 0..=(m + i) {
            let sign = if (q + i) % 2 == 0 { 1.0 } else { -1.0 };
            let mid = outer + log_binomial(m + i, q) - q as f64 * psi;
            for comp in compositions(q, p.mu) {
                let mult = log_multinomial(q, &comp).expect("composition total matches");
                let prod: f64 = comp
                    .parts()
                    .iter()
                    .enumerate()
                    .map(|(k, &pk)| {
                        if pk == 0 {
                            0.0
                        } else {
                            pk as f64 * (k as f64 * ln_psi - log_factorial(k as u32))
                        }
                    })
                    .sum();
                total.push(sign, mid + mult + prod);
            }
        }
    }
    total.value().clamp(0.0, 1.0)
}

/// Far-user outage with the direct-link factor in expanded form.
pub fn outage_far_series(cfg: &Scenario1Config, rho: f64) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    let Some(eps) = cfg.thresholds(rho).epsilon else {
        return Ok(1.0);
    };
    let c = fixed_gain_constant(cfg, rho);
    Ok(ordered_cdf_series(&cfg.far_fading(), cfg.far_index(), eps) * theta2_closed(cfg, c, eps))
}

/// Direct-scenario outage of `user` in expanded form.
pub fn outage_user_series_s2(cfg: &Scenario2Config, rho: f64, user: usize) -> Result<f64> {
    cfg.validate()?;
    check_rho(rho)?;
    check_user(cfg, user)?;
    Ok(match cfg.thresholds(rho).phi_star(user) {
        Some(phi) => ordered_cdf_series(&cfg.fading(user), cfg.index(user), phi),
        None => 1.0,
    })
}
