//! Reference computations for the closed forms and the comparison harness.
//!
//! The oracles integrate the defining probability directly with adaptive
//! quadrature, sharing nothing with the closed forms except the Gamma
//! distribution functions. The harness pairs every closed-form value with
//! its oracle and, where the probability is large enough to be resolved,
//! with a Monte Carlo estimate.

use std::io::Write;

use log::warn;
use rayon::prelude::*;

use crate::analytic::{
    fixed_gain_constant, outage_far_exact, outage_near_exact, outage_user_exact_s2, theta2_closed,
    theta4_closed, Scenario1Config, Scenario2Config, ScenarioConfig,
};
use crate::error::{Error, Result};
use crate::fading::{gamma_cdf_sf, gamma_pdf, ordered_pdf, FadingParams, OrderedIndex};
use crate::montecarlo::{estimate_cooperative, estimate_direct, Estimate, TrialBatch};
use crate::numerics::{integrate_finite, integrate_semi_infinite, QuadratureOptions};
use crate::{db_to_linear, fmt_sci};

/// Relative agreement required between a closed form and its oracle.
pub const ORACLE_REL_TOL: f64 = 1e-6;
/// Width of the Monte Carlo acceptance band in standard errors.
pub const MC_SIGMAS: f64 = 3.0;
/// Probabilities at or below this are not checked against simulation.
pub const MC_MIN_PROBABILITY: f64 = 1e-4;

fn oracle_options() -> QuadratureOptions {
    QuadratureOptions::with_tolerance(0.0, 1e-10)
}

/// `P(Y < z) + ∫_z^∞ f_Y(y) F_X(zC/(y - z)) dy`, the relay-branch outage
/// with `Y ~ Gamma(mu, omega_sr)` and `X ~ Gamma(mu, omega_rd)`.
pub fn relay_branch_oracle(mu: u32, omega_sr: f64, omega_rd: f64, c: f64, z: f64) -> Result<f64> {
    relay_branch_with_breaks(mu, omega_sr, omega_rd, c, z, None)
}

/// [`relay_branch_oracle`] with an extra partition point at `y = z + split`.
pub fn relay_branch_oracle_split(
    mu: u32,
    omega_sr: f64,
    omega_rd: f64,
    c: f64,
    z: f64,
    split: f64,
) -> Result<f64> {
    if !(split > 0.0) {
        return Err(Error::Domain(format!("split point must be positive, got {split}")));
    }
    relay_branch_with_breaks(mu, omega_sr, omega_rd, c, z, Some(split))
}

fn relay_branch_with_breaks(
    mu: u32,
    omega_sr: f64,
    omega_rd: f64,
    c: f64,
    z: f64,
    split: Option<f64>,
) -> Result<f64> {
    let (y, x) = branch_laws(mu, omega_sr, omega_rd)?;
    if z <= 0.0 {
        return Ok(0.0);
    }
    let integrand = |s: f64| {
        if s <= 0.0 {
            return gamma_pdf(&y, z);
        }
        gamma_pdf(&y, z + s) * gamma_cdf_sf(&x, z * c / s).0
    };
    let tail = integrate_over_offsets(integrand, z * c / omega_rd, split, &oracle_options())?;
    Ok(gamma_cdf_sf(&y, z).0 + tail)
}

/// `∫_0^∞ g(s) ds` for an integrand whose structure sits near `s = scale`,
/// which may be many orders of magnitude below 1. The range is cut at
/// geometrically spaced points so each piece is well resolved.
fn integrate_over_offsets<F: Fn(f64) -> f64>(
    g: F,
    scale: f64,
    split: Option<f64>,
    opts: &QuadratureOptions,
) -> Result<f64> {
    let mut breaks = vec![0.0];
    let mut b = scale.min(1.0);
    while b < 1.0 {
        breaks.push(b);
        b *= 8.0;
    }
    breaks.push(1.0);
    if let Some(s) = split {
        breaks.push(s);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += integrate_finite(&g, w[0], w[1], opts)?.value;
    }
    total += integrate_semi_infinite(&g, *breaks.last().unwrap(), opts)?.value;
    Ok(total)
}

fn branch_laws(mu: u32, omega_sr: f64, omega_rd: f64) -> Result<(FadingParams, FadingParams)> {
    Ok((FadingParams::new(mu, omega_sr)?, FadingParams::new(mu, omega_rd)?))
}

/// Quadrature reference for the far user's relay branch.
pub fn theta2_oracle(cfg: &Scenario1Config, c: f64, z: f64) -> Result<f64> {
    relay_branch_oracle(cfg.mu, cfg.omega_sr, cfg.omega_rd_far, c, z)
}

/// Quadrature reference for the near user's relay branch.
///
/// Integrates the failure probability rather than `1 - P(success)`: the
/// complement form cancels catastrophically once the outage drops below
/// about `1e-8`.
pub fn theta4_oracle(cfg: &Scenario1Config, c: f64, z: f64) -> Result<f64> {
    relay_branch_oracle(cfg.mu, cfg.omega_sr, cfg.omega_rd_near, c, z)
}

/// `∫_0^z f_(m)(x) dx`, the order-statistic CDF by direct integration of
/// its density.
pub fn ordered_cdf_oracle(p: &FadingParams, idx: OrderedIndex, z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Ok(0.0);
    }
    let q = integrate_finite(|x| ordered_pdf(p, idx, x), 0.0, z, &oracle_options())?;
    Ok(q.value)
}

/// Which tolerance a row was judged against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Closed form against quadrature only.
    Oracle,
    /// Closed form against quadrature and simulation.
    OracleAndSimulation,
}

impl Criterion {
    pub fn id(self) -> &'static str {
        match self {
            Criterion::Oracle => "oracle",
            Criterion::OracleAndSimulation => "oracle+mc",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub scenario: &'static str,
    pub mu: u32,
    pub rho_db: f64,
    pub quantity: String,
    pub exact: f64,
    /// `NaN` when the oracle failed.
    pub oracle: f64,
    pub mc: Option<Estimate>,
    pub criterion: Criterion,
    pub pass: bool,
}

impl ComparisonRow {
    fn new(
        scenario: &'static str,
        mu: u32,
        rho_db: f64,
        quantity: String,
        exact: f64,
        oracle: f64,
        mc: Option<Estimate>,
    ) -> Self {
        let criterion = match mc {
            Some(_) => Criterion::OracleAndSimulation,
            None => Criterion::Oracle,
        };
        let mut row = Self {
            scenario,
            mu,
            rho_db,
            quantity,
            exact,
            oracle,
            mc,
            criterion,
            pass: false,
        };
        row.pass = row.evaluate();
        row
    }

    /// Recomputes the verdict from the stored numbers.
    pub fn evaluate(&self) -> bool {
        let oracle_ok = (self.exact - self.oracle).abs() <= ORACLE_REL_TOL * self.oracle.abs();
        let mc_ok = match (self.criterion, self.mc) {
            (Criterion::Oracle, _) => true,
            (Criterion::OracleAndSimulation, Some(e)) => {
                let band = (MC_SIGMAS * e.stderr).max(ORACLE_REL_TOL * self.exact.abs());
                (self.exact - e.p_hat).abs() <= band
            }
            (Criterion::OracleAndSimulation, None) => false,
        };
        oracle_ok && mc_ok
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub rows: Vec<ComparisonRow>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "snr_db,scenario,mu,quantity,exact,oracle,p_mc,mc_stderr,criterion,verdict")?;
        for r in &self.rows {
            let (mc, se) = match r.mc {
                Some(e) => (fmt_sci(e.p_hat), fmt_sci(e.stderr)),
                None => (String::new(), String::new()),
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.rho_db,
                r.scenario,
                r.mu,
                r.quantity,
                fmt_sci(r.exact),
                fmt_sci(r.oracle),
                mc,
                se,
                r.criterion.id(),
                if r.pass { "pass" } else { "fail" }
            )?;
        }
        Ok(())
    }
}

/// Compares every closed form against its oracle (and simulation, when
/// `batch` is given) over an SNR grid in dB.
///
/// A failing oracle marks its row as failed without aborting the run.
pub fn run_validation_suite(
    configs: &[ScenarioConfig],
    snr_db: &[f64],
    batch: Option<&TrialBatch>,
) -> Result<ValidationReport> {
    if snr_db.is_empty() {
        return Err(Error::config("snr grid", "must contain at least one point"));
    }
    for cfg in configs {
        match cfg {
            ScenarioConfig::Cooperative(c) => c.validate()?,
            ScenarioConfig::Direct(c) => c.validate()?,
        }
    }
    let jobs: Vec<(&ScenarioConfig, f64)> =
        configs.iter().flat_map(|c| snr_db.iter().map(move |&s| (c, s))).collect();
    let rows = jobs
        .into_par_iter()
        .map(|(cfg, db)| match cfg {
            ScenarioConfig::Cooperative(c) => cooperative_rows(c, db, batch),
            ScenarioConfig::Direct(c) => direct_rows(c, db, batch),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport {
        rows: rows.into_iter().flatten().collect(),
    })
}

fn or_nan(r: Result<f64>, what: &str) -> f64 {
    r.unwrap_or_else(|e| {
        warn!("{what} oracle failed: {e}");
        f64::NAN
    })
}

fn cooperative_rows(cfg: &Scenario1Config, db: f64, batch: Option<&TrialBatch>) -> Result<Vec<ComparisonRow>> {
    let rho = db_to_linear(db);
    let c = fixed_gain_constant(cfg, rho);
    let th = cfg.thresholds(rho);
    let far = outage_far_exact(cfg, rho)?;
    let near = outage_near_exact(cfg, rho)?;
    let mc = match batch {
        Some(b) if far.max(near) > MC_MIN_PROBABILITY => Some(estimate_cooperative(cfg, rho, b)?),
        _ => None,
    };
    let gate = |p: f64, e: Option<Estimate>| e.filter(|_| p > MC_MIN_PROBABILITY);
    let row = |q: &str, exact, oracle, mc| ComparisonRow::new("coop", cfg.mu, db, q.to_string(), exact, oracle, mc);

    let mut rows = Vec::with_capacity(4);
    let (far_oracle, near_oracle) = match (th.epsilon, th.omega) {
        (Some(eps), Some(om)) => {
            let t2 = or_nan(theta2_oracle(cfg, c, eps), "theta2");
            let t4 = or_nan(theta4_oracle(cfg, c, om), "theta4");
            rows.push(row("theta2", theta2_closed(cfg, c, eps), t2, None));
            rows.push(row("theta4", theta4_closed(cfg, c, om), t4, None));
            let t1 = or_nan(ordered_cdf_oracle(&cfg.far_fading(), cfg.far_index(), eps), "theta1");
            let t3 = or_nan(ordered_cdf_oracle(&cfg.near_fading(), cfg.near_index(), om), "theta3");
            (t1 * t2, t3 * t4)
        }
        _ => (1.0, 1.0),
    };
    rows.push(row("far", far, far_oracle, gate(far, mc.map(|m| m.far))));
    rows.push(row("near", near, near_oracle, gate(near, mc.map(|m| m.near))));
    Ok(rows)
}

fn direct_rows(cfg: &Scenario2Config, db: f64, batch: Option<&TrialBatch>) -> Result<Vec<ComparisonRow>> {
    let rho = db_to_linear(db);
    let k = cfg.served();
    let exact = (1..=k).map(|m| outage_user_exact_s2(cfg, rho, m)).collect::<Result<Vec<_>>>()?;
    let mc = match batch {
        Some(b) if exact.iter().any(|&p| p > MC_MIN_PROBABILITY) => Some(estimate_direct(cfg, rho, b)?),
        _ => None,
    };
    let th = cfg.thresholds(rho);
    Ok((1..=k)
        .map(|m| {
            let oracle = match th.phi_star(m) {
                Some(phi) => or_nan(ordered_cdf_oracle(&cfg.fading(m), cfg.index(m), phi), "order statistic"),
                None => 1.0,
            };
            let p = exact[m - 1];
            let est = mc.as_ref().map(|e| e.users[m - 1]).filter(|_| p > MC_MIN_PROBABILITY);
            ComparisonRow::new("direct", cfg.mu, db, format!("user{m}"), p, oracle, est)
        })
        .collect())
}
