//! Outage and throughput analysis for downlink NOMA over Nakagami-m fading.
//!
//! Two deployments are covered:
//!
//! * **Cooperative** ([`analytic::Scenario1Config`]): a base station serves a
//!   far/near user pair drawn from `M` sorted users, with a fixed-gain
//!   amplify-and-forward relay providing a second copy in another slot. The
//!   receivers apply selection combining.
//! * **Direct** ([`analytic::Scenario2Config`]): no relay, `M` users with
//!   successive interference cancellation.
//!
//! Every closed form in [`analytic`] has an independent check: the
//! [`montecarlo`] link-level simulator evaluates the SINR expressions
//! directly, and [`validation`] integrates the relay-branch probabilities
//! numerically. The [`cli`] module drives parameter sweeps and writes CSV.
//!
//! ```
//! use noma_perf::analytic::{outage_far_exact, Scenario1Config};
//!
//! let cfg = Scenario1Config::preset(1);
//! let p = outage_far_exact(&cfg, 1e3).unwrap();
//! assert!(p > 0.0 && p < 1e-2);
//! ```

pub mod analytic;
pub mod cli;
pub mod error;
pub mod fading;
pub mod montecarlo;
pub mod numerics;
pub mod validation;

pub use error::{Error, Result};

/// Converts an SNR in dB to the linear transmit SNR.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Scientific notation with 12 significant digits, independent of locale.
pub(crate) fn fmt_sci(x: f64) -> String {
    format!("{x:.11e}")
}
