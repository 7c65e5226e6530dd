//! Closed-form outage probabilities, their high-SNR asymptotes, diversity
//! orders, delay-limited throughput and the OMA benchmark.
//!
//! All evaluations take the linear transmit SNR `rho` and are pure.

mod asymptotic;
mod config;
mod cooperative;
mod direct;
mod diversity;
mod series;
mod throughput;

pub use asymptotic::{outage_far_asymptotic, outage_near_asymptotic, outage_user_asymptotic_s2};
pub use config::{
    fixed_gain_constant, relay_link_powers, threshold_snr, RelayGain, Scenario1Config,
    Scenario1Thresholds, Scenario2Config, Scenario2Thresholds, ScenarioConfig,
};
pub use cooperative::{
    outage_far_exact, outage_far_terms, outage_near_exact, outage_near_terms, relay_branch_outage,
    theta1, theta2_closed, theta3, theta4_closed, FarOutage, NearOutage,
};
pub use direct::{outage_all_users_s2, outage_user_exact_s2};
pub use diversity::diversity_order_fit;
pub use series::{ordered_cdf_series, outage_far_series, outage_user_series_s2};
pub use throughput::{
    oma_outage_s1, oma_outage_s2, outage_oma_baseline, throughput_oma, throughput_s1,
    throughput_s2,
};

/// Outage values below this are reported as zero with a flag.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

/// A probability after the reporting floor has been applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Floored {
    pub value: f64,
    pub floored: bool,
}

pub fn apply_floor(p: f64) -> Floored {
    if p < PROBABILITY_FLOOR {
        Floored {
            value: 0.0,
            floored: p > 0.0,
        }
    } else {
        Floored {
            value: p,
            floored: false,
        }
    }
}

pub(crate) fn check_rho(rho: f64) -> crate::Result<()> {
    if rho > 0.0 && !rho.is_nan() {
        Ok(())
    } else {
        Err(crate::Error::Domain(format!("SNR must be positive, got {rho}")))
    }
}
