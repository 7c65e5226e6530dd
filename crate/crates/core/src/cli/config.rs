//! Sweep specification and its TOML file format.
//!
//! ```toml
//! [sweep]
//! scenario = "coop"          # coop | direct | compare
//! snr_start = 0.0
//! snr_stop = 40.0
//! snr_step = 5.0
//! mu = [1, 2]
//! users = [1, 5]             # ranks to report; all when omitted
//! trials = 100000
//! seed = 1
//! include = ["exact", "asymptotic", "mc", "oma", "throughput"]
//!
//! [cooperative]
//! users = 5
//! far = 1
//! near = 5
//! power_far = 0.8
//! power_near = 0.2
//! rate_far = 1.0
//! rate_near = 1.5
//! kappa = 0.9                # or relay_gain = "power-normalized"
//! d_sr = 0.5
//! alpha = 2.0
//!
//! [direct]
//! users = 3
//! ranks = [1, 2, 3]
//! power = [0.5, 0.4, 0.1]
//! rates = [0.2, 1.0, 2.0]
//! omega = [0.3, 1.5, 5.0]
//! ```
//!
//! Every key is optional; missing keys fall back to the five-user
//! cooperative and three-user direct defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analytic::{relay_link_powers, RelayGain, Scenario1Config, Scenario2Config};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Coop,
    Direct,
    Compare,
}

impl ScenarioKind {
    pub fn cooperative(self) -> bool {
        matches!(self, ScenarioKind::Coop | ScenarioKind::Compare)
    }

    pub fn direct(self) -> bool {
        matches!(self, ScenarioKind::Direct | ScenarioKind::Compare)
    }
}

/// Inclusive SNR grid in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::config("snr_start/snr_stop", "must be finite"));
        }
        if self.start > self.stop {
            return Err(Error::config("snr_start", "must not exceed snr_stop"));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::config("snr_step", "must be positive"));
        }
        Ok(())
    }

    /// Grid points; the stop value is included when it lies on the grid.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// Columns a sweep computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Include {
    pub exact: bool,
    pub asymptotic: bool,
    pub mc: bool,
    pub oma: bool,
    pub throughput: bool,
}

impl Default for Include {
    fn default() -> Self {
        Self {
            exact: true,
            asymptotic: true,
            mc: true,
            oma: false,
            throughput: true,
        }
    }
}

impl Include {
    fn from_names(names: &[String]) -> Result<Self> {
        let mut inc = Include {
            exact: false,
            asymptotic: false,
            mc: false,
            oma: false,
            throughput: false,
        };
        for name in names {
            match name.as_str() {
                "exact" => inc.exact = true,
                "asymptotic" => inc.asymptotic = true,
                "mc" => inc.mc = true,
                "oma" => inc.oma = true,
                "throughput" => inc.throughput = true,
                other => return Err(Error::config("include", format!("unknown column group `{other}`"))),
            }
        }
        Ok(inc)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scenario: ScenarioKind,
    pub snr_db: SnrGrid,
    pub mu: Vec<u32>,
    /// Ranks to report; `None` reports every user of the scenario.
    pub users: Option<Vec<u32>>,
    /// Monte Carlo trials per point; 0 disables simulation.
    pub trials: u64,
    pub seed: u64,
    /// Parallel partitions per Monte Carlo run; chosen from `trials` when unset.
    pub chunks: Option<u32>,
    pub include: Include,
    pub output: Option<PathBuf>,
    /// Template for the cooperative deployment; `mu` is replaced per sweep value.
    pub cooperative: Scenario1Config,
    /// Template for the direct deployment; `mu` is replaced per sweep value.
    pub direct: Scenario2Config,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            scenario: ScenarioKind::Coop,
            snr_db: SnrGrid {
                start: 0.0,
                stop: 40.0,
                step: 5.0,
            },
            mu: vec![1],
            users: None,
            trials: 100_000,
            seed: 1,
            chunks: None,
            include: Include::default(),
            output: None,
            cooperative: Scenario1Config::preset(1),
            direct: Scenario2Config::preset(1),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.snr_db.validate()?;
        if self.mu.is_empty() || self.mu.contains(&0) {
            return Err(Error::config("mu", "must list positive integers"));
        }
        if self.chunks == Some(0) {
            return Err(Error::config("chunks", "must be at least 1"));
        }
        for &mu in &self.mu {
            if self.scenario.cooperative() {
                self.cooperative_for(mu).validate()?;
            }
            if self.scenario.direct() {
                self.direct_for(mu).validate()?;
            }
        }
        if let Some(users) = &self.users {
            for &u in users {
                let coop = self.scenario.cooperative()
                    && (u == self.cooperative.far || u == self.cooperative.near);
                let direct = self.scenario.direct() && self.direct.ranks.contains(&u);
                if !(coop || direct) {
                    return Err(Error::config("users", format!("rank {u} is not served by the selected scenario")));
                }
            }
        }
        Ok(())
    }

    pub fn cooperative_for(&self, mu: u32) -> Scenario1Config {
        Scenario1Config {
            mu,
            ..self.cooperative.clone()
        }
    }

    pub fn direct_for(&self, mu: u32) -> Scenario2Config {
        Scenario2Config {
            mu,
            ..self.direct.clone()
        }
    }

    pub fn reports(&self, rank: u32) -> bool {
        self.users.as_ref().is_none_or(|u| u.contains(&rank))
    }

    /// Reads a spec from a TOML file, starting from the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_spec()
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    sweep: SweepSection,
    #[serde(default)]
    cooperative: CooperativeSection,
    #[serde(default)]
    direct: DirectSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    scenario: Option<ScenarioKind>,
    snr_start: Option<f64>,
    snr_stop: Option<f64>,
    snr_step: Option<f64>,
    mu: Option<Vec<u32>>,
    users: Option<Vec<u32>>,
    trials: Option<u64>,
    seed: Option<u64>,
    chunks: Option<u32>,
    include: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum GainMode {
    Kappa,
    PowerNormalized,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CooperativeSection {
    users: Option<u32>,
    far: Option<u32>,
    near: Option<u32>,
    power_far: Option<f64>,
    power_near: Option<f64>,
    rate_far: Option<f64>,
    rate_near: Option<f64>,
    relay_gain: Option<GainMode>,
    kappa: Option<f64>,
    d_sr: Option<f64>,
    alpha: Option<f64>,
    omega_sd_far: Option<f64>,
    omega_sd_near: Option<f64>,
    omega_sr: Option<f64>,
    omega_rd: Option<f64>,
    omega_rd_far: Option<f64>,
    omega_rd_near: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DirectSection {
    users: Option<u32>,
    ranks: Option<Vec<u32>>,
    power: Option<Vec<f64>>,
    rates: Option<Vec<f64>>,
    omega: Option<Vec<f64>>,
}

impl ConfigFile {
    fn into_spec(self) -> Result<SweepSpec> {
        let mut spec = SweepSpec::default();
        let s = self.sweep;
        if let Some(v) = s.scenario {
            spec.scenario = v;
        }
        if let Some(v) = s.snr_start {
            spec.snr_db.start = v;
        }
        if let Some(v) = s.snr_stop {
            spec.snr_db.stop = v;
        }
        if let Some(v) = s.snr_step {
            spec.snr_db.step = v;
        }
        if let Some(v) = s.mu {
            spec.mu = v;
        }
        spec.users = s.users;
        if let Some(v) = s.trials {
            spec.trials = v;
        }
        if let Some(v) = s.seed {
            spec.seed = v;
        }
        spec.chunks = s.chunks;
        if let Some(names) = s.include {
            spec.include = Include::from_names(&names)?;
        }
        spec.cooperative = self.cooperative.apply(spec.cooperative)?;
        spec.direct = self.direct.apply(spec.direct);
        Ok(spec)
    }
}

impl CooperativeSection {
    fn apply(self, mut cfg: Scenario1Config) -> Result<Scenario1Config> {
        macro_rules! set {
            ($($field:ident),*) => {$(if let Some(v) = self.$field { cfg.$field = v; })*};
        }
        set!(users, far, near, power_far, power_near, rate_far, rate_near, omega_sd_far, omega_sd_near);

        cfg.relay_gain = match (self.relay_gain, self.kappa) {
            (Some(GainMode::PowerNormalized), Some(_)) => {
                return Err(Error::config("kappa", "cannot be combined with relay_gain = \"power-normalized\""));
            }
            (Some(GainMode::PowerNormalized), None) => RelayGain::PowerNormalized,
            (Some(GainMode::Kappa), None) => {
                return Err(Error::config("kappa", "is required when relay_gain = \"kappa\""));
            }
            (_, Some(k)) => RelayGain::Kappa(k),
            (None, None) => cfg.relay_gain,
        };

        if self.d_sr.is_some() || self.alpha.is_some() {
            let d_sr = self.d_sr.unwrap_or(0.5);
            let alpha = self.alpha.unwrap_or(2.0);
            if !(d_sr > 0.0 && d_sr < 1.0) {
                return Err(Error::config("d_sr", "must lie strictly between 0 and 1"));
            }
            if !(alpha > 0.0) {
                return Err(Error::config("alpha", "must be positive"));
            }
            let (sr, rd) = relay_link_powers(d_sr, alpha);
            cfg.omega_sr = sr;
            cfg.omega_rd_far = rd;
            cfg.omega_rd_near = rd;
        }
        if let Some(v) = self.omega_sr {
            cfg.omega_sr = v;
        }
        if let Some(v) = self.omega_rd {
            cfg.omega_rd_far = v;
            cfg.omega_rd_near = v;
        }
        set!(omega_rd_far, omega_rd_near);
        Ok(cfg)
    }
}

impl DirectSection {
    fn apply(self, mut cfg: Scenario2Config) -> Scenario2Config {
        if let Some(p) = self.power {
            let k = p.len() as u32;
            // a new user count resets the ranks unless they are given too
            cfg.users = k;
            cfg.ranks = (1..=k).collect();
            cfg.power = p;
        }
        if let Some(v) = self.users {
            cfg.users = v;
        }
        if let Some(v) = self.ranks {
            cfg.ranks = v;
        }
        if let Some(v) = self.rates {
            cfg.rates = v;
        }
        if let Some(v) = self.omega {
            cfg.omega = v;
        }
        cfg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points() {
        let g = SnrGrid {
            start: 0.0,
            stop: 40.0,
            step: 5.0,
        };
        assert_eq!(g.points().len(), 9);
        let one = SnrGrid { start: 30.0, stop: 30.0, step: 1.0 };
        assert_eq!(one.points(), vec![30.0]);
        let odd = SnrGrid { start: 0.0, stop: 1.0, step: 0.1 };
        assert_eq!(odd.points().len(), 11);
        assert!(SnrGrid { start: 5.0, stop: 0.0, step: 1.0 }.validate().is_err());
        assert!(SnrGrid { start: 0.0, stop: 5.0, step: 0.0 }.validate().is_err());
    }

    #[test]
    fn empty_file_is_the_default() {
        assert_eq!(SweepSpec::from_toml("").unwrap(), SweepSpec::default());
    }

    #[test]
    fn full_file_round_trip() {
        let spec = SweepSpec::from_toml(
            r#"
            [sweep]
            scenario = "compare"
            snr_start = 10
            snr_stop = 20.0
            snr_step = 2.5
            mu = [2, 3]
            users = [1]
            trials = 0
            seed = 42
            include = ["exact", "oma"]

            [cooperative]
            users = 3
            near = 3
            rate_far = 0.5
            rate_near = 1.0
            relay_gain = "power-normalized"
            d_sr = 0.25

            [direct]
            users = 3
            ranks = [1, 3]
            power = [0.8, 0.2]
            rates = [0.5, 1.0]
            omega = [1.0, 1.0]
            "#,
        )
        .unwrap();
        assert_eq!(spec.scenario, ScenarioKind::Compare);
        assert_eq!(spec.snr_db.points(), vec![10.0, 12.5, 15.0, 17.5, 20.0]);
        assert_eq!(spec.include, Include { exact: true, asymptotic: false, mc: false, oma: true, throughput: false });
        assert_eq!(spec.cooperative.relay_gain, RelayGain::PowerNormalized);
        assert_eq!(spec.cooperative.omega_sr, 16.0);
        assert!((spec.cooperative.omega_rd_near - 1.0 / 0.5625).abs() < 1e-15);
        assert_eq!(spec.direct.ranks, vec![1, 3]);
        spec.validate().unwrap();
    }

    #[test]
    fn errors_name_line_and_field() {
        let err = SweepSpec::from_toml("[sweep]\nseed = 1\nmu = \"two\"\n").unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("mu"), "{err}");
        let err = SweepSpec::from_toml("[direct]\nomegas = [1.0]\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("omegas"), "{err}");
        let err = SweepSpec::from_toml("[sweep]\ninclude = [\"bogus\"]").unwrap_err().to_string();
        assert!(err.contains("include"), "{err}");
    }

    #[test]
    fn invariants_are_named() {
        let spec = SweepSpec::from_toml("[cooperative]\npower_far = 0.3\npower_near = 0.7\n").unwrap();
        let err = spec.validate().unwrap_err().to_string();
        assert!(err.contains("power"), "{err}");
        let spec = SweepSpec::from_toml("[sweep]\nusers = [4]\n").unwrap();
        assert!(spec.validate().unwrap_err().to_string().contains("users"));
    }
}
