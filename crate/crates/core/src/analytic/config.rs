use crate::error::{Error, Result};
use crate::fading::{FadingParams, OrderedIndex};

/// `2^{slots·R} - 1`: the SINR a rate `R` needs when the transmission spans
/// `slots` channel uses.
pub fn threshold_snr(rate: f64, slots: u32) -> f64 {
    (slots as f64 * rate).exp2() - 1.0
}

/// Average powers `(ω_sr, ω_rd)` for a relay at normalised distance `d_sr`
/// on the unit BS–user segment with path-loss exponent `alpha`.
pub fn relay_link_powers(d_sr: f64, alpha: f64) -> (f64, f64) {
    (d_sr.powf(-alpha), (1.0 - d_sr).powf(-alpha))
}

/// How the relay amplification constant `C = 1/κ²` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelayGain {
    /// A fixed κ, independent of SNR.
    Kappa(f64),
    /// κ² = P_r / (P_s ω_sr + N_0) with equal BS and relay powers.
    PowerNormalized,
}

/// Cooperative NOMA with a fixed-gain AF relay and direct links.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario1Config {
    /// Number of sorted users `M`.
    pub users: u32,
    /// Rank of the far user.
    pub far: u32,
    /// Rank of the near user.
    pub near: u32,
    pub power_far: f64,
    pub power_near: f64,
    pub rate_far: f64,
    pub rate_near: f64,
    pub relay_gain: RelayGain,
    /// BS to user link power seen by the far user's order statistic.
    pub omega_sd_far: f64,
    /// BS to user link power seen by the near user's order statistic.
    pub omega_sd_near: f64,
    pub omega_sr: f64,
    pub omega_rd_far: f64,
    pub omega_rd_near: f64,
    pub mu: u32,
}

impl Scenario1Config {
    /// Five users, pair (1, 5), `a = 0.8/0.2`, rates 1 and 1.5 BPCU,
    /// κ = 0.9, relay half way with path-loss exponent 2.
    pub fn preset(mu: u32) -> Self {
        let (omega_sr, omega_rd) = relay_link_powers(0.5, 2.0);
        Self {
            users: 5,
            far: 1,
            near: 5,
            power_far: 0.8,
            power_near: 0.2,
            rate_far: 1.0,
            rate_near: 1.5,
            relay_gain: RelayGain::Kappa(0.9),
            omega_sd_far: 1.0,
            omega_sd_near: 1.0,
            omega_sr,
            omega_rd_far: omega_rd,
            omega_rd_near: omega_rd,
            mu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 {
            return Err(Error::config("mu", "must be a positive integer"));
        }
        if !(1 <= self.far && self.far < self.near && self.near <= self.users) {
            return Err(Error::config(
                "far/near",
                format!(
                    "ranks must satisfy 1 <= far < near <= users, got far={} near={} users={}",
                    self.far, self.near, self.users
                ),
            ));
        }
        if !(self.power_near > 0.0 && self.power_far > self.power_near) {
            return Err(Error::config("power_far", "must exceed power_near > 0"));
        }
        if ((self.power_far + self.power_near) - 1.0).abs() > 1e-9 {
            return Err(Error::config("power_far", "power_far + power_near must equal 1"));
        }
        for (name, v) in [("rate_far", self.rate_far), ("rate_near", self.rate_near)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(name, "must be positive"));
            }
        }
        for (name, v) in [
            ("omega_sd_far", self.omega_sd_far),
            ("omega_sd_near", self.omega_sd_near),
            ("omega_sr", self.omega_sr),
            ("omega_rd_far", self.omega_rd_far),
            ("omega_rd_near", self.omega_rd_near),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(name, "must be positive"));
            }
        }
        if let RelayGain::Kappa(k) = self.relay_gain {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::config("kappa", "must be positive"));
            }
        }
        if self.omega_sd_far != self.omega_sd_near {
            log::warn!(
                "omega_sd differs between far ({}) and near ({}) users; order statistics assume i.i.d. links, each user uses its own omega",
                self.omega_sd_far,
                self.omega_sd_near
            );
        }
        Ok(())
    }

    pub fn far_fading(&self) -> FadingParams {
        FadingParams {
            mu: self.mu,
            omega: self.omega_sd_far,
        }
    }

    pub fn near_fading(&self) -> FadingParams {
        FadingParams {
            mu: self.mu,
            omega: self.omega_sd_near,
        }
    }

    pub fn far_index(&self) -> OrderedIndex {
        OrderedIndex {
            rank: self.far,
            users: self.users,
        }
    }

    pub fn near_index(&self) -> OrderedIndex {
        OrderedIndex {
            rank: self.near,
            users: self.users,
        }
    }

    pub fn thresholds(&self, rho: f64) -> Scenario1Thresholds {
        let gamma_far = threshold_snr(self.rate_far, 2);
        let gamma_near = threshold_snr(self.rate_near, 2);
        let margin = self.power_far - self.power_near * gamma_far;
        let epsilon = (margin > 0.0).then(|| gamma_far / (rho * margin));
        let beta = gamma_near / (self.power_near * rho);
        Scenario1Thresholds {
            gamma_far,
            gamma_near,
            epsilon,
            beta,
            omega: epsilon.map(|e| e.max(beta)),
        }
    }
}

/// SINR thresholds and the derived gain thresholds of the cooperative case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario1Thresholds {
    pub gamma_far: f64,
    pub gamma_near: f64,
    /// Far-message gain threshold; `None` when `a_f <= a_n γ_f` so the far
    /// message can never be decoded.
    pub epsilon: Option<f64>,
    pub beta: f64,
    /// `max(epsilon, beta)`.
    pub omega: Option<f64>,
}

/// `C = 1/κ²` for the configured relay gain.
pub fn fixed_gain_constant(cfg: &Scenario1Config, rho: f64) -> f64 {
    match cfg.relay_gain {
        RelayGain::Kappa(k) => 1.0 / (k * k),
        RelayGain::PowerNormalized => cfg.omega_sr + 1.0 / rho,
    }
}

/// Direct-link NOMA with SIC and no relay.
///
/// `ranks` lists the sorted positions (out of `users`) of the served users,
/// weakest first; every per-user vector is indexed the same way. The usual
/// case serves every user, `ranks = 1..=users`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario2Config {
    pub users: u32,
    pub ranks: Vec<u32>,
    pub power: Vec<f64>,
    pub rates: Vec<f64>,
    pub omega: Vec<f64>,
    pub mu: u32,
}

impl Scenario2Config {
    /// Serves all `power.len()` users.
    pub fn new(power: Vec<f64>, rates: Vec<f64>, omega: Vec<f64>, mu: u32) -> Self {
        let users = power.len() as u32;
        Self {
            users,
            ranks: (1..=users).collect(),
            power,
            rates,
            omega,
            mu,
        }
    }

    /// Three users, `ω = (0.3, 1.5, 5)`, `a = (0.5, 0.4, 0.1)`,
    /// `R = (0.2, 1, 2)`.
    pub fn preset(mu: u32) -> Self {
        Self::new(vec![0.5, 0.4, 0.1], vec![0.2, 1.0, 2.0], vec![0.3, 1.5, 5.0], mu)
    }

    pub fn served(&self) -> usize {
        self.ranks.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.ranks.len();
        if self.mu == 0 {
            return Err(Error::config("mu", "must be a positive integer"));
        }
        if k == 0 {
            return Err(Error::config("ranks", "at least one user must be served"));
        }
        for (name, len) in [("power", self.power.len()), ("rates", self.rates.len()), ("omega", self.omega.len())] {
            if len != k {
                return Err(Error::config(name, format!("has {len} entries, expected {k}")));
            }
        }
        if self.ranks[0] == 0
            || self.ranks.windows(2).any(|w| w[0] >= w[1])
            || *self.ranks.last().unwrap() > self.users
        {
            return Err(Error::config("ranks", "must be strictly ascending within 1..=users"));
        }
        if self.power.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::config("power", "all coefficients must be positive"));
        }
        if self.power.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::config("power", "must be non-increasing (a_1 >= a_2 >= ...)"));
        }
        if (self.power.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::config("power", "must sum to 1"));
        }
        if self.rates.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
            return Err(Error::config("rates", "all rates must be positive"));
        }
        if self.omega.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::config("omega", "all average powers must be positive"));
        }
        Ok(())
    }

    pub fn fading(&self, user: usize) -> FadingParams {
        FadingParams {
            mu: self.mu,
            omega: self.omega[user - 1],
        }
    }

    pub fn index(&self, user: usize) -> OrderedIndex {
        OrderedIndex {
            rank: self.ranks[user - 1],
            users: self.users,
        }
    }

    /// Power allocated to the users decoded after `user` (1-based).
    pub fn residual_power(&self, user: usize) -> f64 {
        self.power[user..].iter().sum()
    }

    pub fn thresholds(&self, rho: f64) -> Scenario2Thresholds {
        let k = self.served();
        let gamma: Vec<f64> = self.rates.iter().map(|&r| threshold_snr(r, 1)).collect();
        let phi = (1..=k)
            .map(|i| {
                let g = gamma[i - 1];
                if i == k {
                    Some(g / (rho * self.power[i - 1]))
                } else {
                    let margin = self.power[i - 1] - g * self.residual_power(i);
                    (margin > 0.0).then(|| g / (rho * margin))
                }
            })
            .collect();
        Scenario2Thresholds { gamma, phi }
    }
}

/// Per-user thresholds of the direct case.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario2Thresholds {
    pub gamma: Vec<f64>,
    /// Gain threshold for decoding each user's message; `None` when
    /// `a_i <= γ_i Σ_{j>i} a_j`.
    pub phi: Vec<Option<f64>>,
}

impl Scenario2Thresholds {
    /// Largest threshold among the first `user` messages, or `None` if any
    /// of them is undecodable.
    pub fn phi_star(&self, user: usize) -> Option<f64> {
        self.phi[..user]
            .iter()
            .try_fold(0.0f64, |acc, p| p.map(|v| acc.max(v)))
    }
}

/// Either deployment, for APIs that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioConfig {
    Cooperative(Scenario1Config),
    Direct(Scenario2Config),
}
