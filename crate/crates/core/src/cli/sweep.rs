//! SNR sweeps and their CSV rows.

use std::io::Write;

use rayon::prelude::*;

use super::config::SweepSpec;
use crate::analytic::{
    outage_all_users_s2, outage_far_asymptotic, outage_far_exact, outage_near_asymptotic,
    outage_near_exact, outage_oma_baseline, outage_user_asymptotic_s2, throughput_s1, throughput_s2,
    ScenarioConfig,
};
use crate::error::Result;
use crate::montecarlo::{estimate_cooperative, estimate_direct, Estimate, TrialBatch};
use crate::{db_to_linear, fmt_sci};

pub const CSV_HEADER: &str = "snr_db,scenario,mu,user,p_exact,p_asymptotic,p_mc,mc_stderr,p_oma,throughput";

/// One `(snr, scenario, mu, user)` point. Disabled columns are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub scenario: &'static str,
    pub mu: u32,
    pub user: u32,
    pub p_exact: Option<f64>,
    pub p_asymptotic: Option<f64>,
    pub p_mc: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub p_oma: Option<f64>,
    pub throughput: Option<f64>,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let col = |v: Option<f64>| v.map(fmt_sci).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.snr_db,
            self.scenario,
            self.mu,
            self.user,
            col(self.p_exact),
            col(self.p_asymptotic),
            col(self.p_mc),
            col(self.mc_stderr),
            col(self.p_oma),
            col(self.throughput)
        )
    }
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Cooperative(u32, f64),
    Direct(u32, f64),
}

/// Evaluates every grid point; row order is snr, then scenario, mu, user.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut jobs = Vec::new();
    for db in spec.snr_db.points() {
        if spec.scenario.cooperative() {
            jobs.extend(spec.mu.iter().map(|&mu| Job::Cooperative(mu, db)));
        }
        if spec.scenario.direct() {
            jobs.extend(spec.mu.iter().map(|&mu| Job::Direct(mu, db)));
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|job| match job {
            Job::Cooperative(mu, db) => cooperative_point(spec, mu, db),
            Job::Direct(mu, db) => direct_point(spec, mu, db),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}

fn batch(spec: &SweepSpec) -> Option<TrialBatch> {
    (spec.include.mc && spec.trials > 0).then(|| {
        let b = TrialBatch::new(spec.trials, spec.seed);
        match spec.chunks {
            Some(c) => b.with_chunks(c),
            None => b,
        }
    })
}

fn cooperative_point(spec: &SweepSpec, mu: u32, db: f64) -> Result<Vec<SweepRow>> {
    let cfg = spec.cooperative_for(mu);
    let rho = db_to_linear(db);
    let inc = spec.include;
    let mc = batch(spec).map(|b| estimate_cooperative(&cfg, rho, &b)).transpose()?;
    let oma = if inc.oma {
        Some(outage_oma_baseline(&ScenarioConfig::Cooperative(cfg.clone()), rho)?)
    } else {
        None
    };
    let throughput = if inc.throughput { Some(throughput_s1(&cfg, rho)?) } else { None };

    let mut rows = Vec::with_capacity(2);
    let users: [(u32, fn(_, _) -> _, fn(_, _) -> _, Option<Estimate>); 2] = [
        (cfg.far, outage_far_exact, outage_far_asymptotic, mc.map(|m| m.far)),
        (cfg.near, outage_near_exact, outage_near_asymptotic, mc.map(|m| m.near)),
    ];
    for (rank, exact, asym, est) in users {
        if !spec.reports(rank) {
            continue;
        }
        rows.push(SweepRow {
            snr_db: db,
            scenario: "coop",
            mu,
            user: rank,
            p_exact: if inc.exact { Some(exact(&cfg, rho)?) } else { None },
            p_asymptotic: if inc.asymptotic { Some(asym(&cfg, rho)?) } else { None },
            p_mc: est.map(|e| e.p_hat),
            mc_stderr: est.map(|e| e.stderr),
            p_oma: oma,
            throughput,
        });
    }
    Ok(rows)
}

fn direct_point(spec: &SweepSpec, mu: u32, db: f64) -> Result<Vec<SweepRow>> {
    let cfg = spec.direct_for(mu);
    let rho = db_to_linear(db);
    let inc = spec.include;
    let mc = batch(spec).map(|b| estimate_direct(&cfg, rho, &b)).transpose()?;
    let exact = outage_all_users_s2(&cfg, rho)?;
    let oma = if inc.oma {
        Some(outage_oma_baseline(&ScenarioConfig::Direct(cfg.clone()), rho)?)
    } else {
        None
    };
    let throughput = if inc.throughput { Some(throughput_s2(&cfg, rho)?) } else { None };

    let mut rows = Vec::with_capacity(cfg.served());
    for (m, &rank) in cfg.ranks.iter().enumerate() {
        if !spec.reports(rank) {
            continue;
        }
        let est = mc.as_ref().map(|e| e.users[m]);
        rows.push(SweepRow {
            snr_db: db,
            scenario: "direct",
            mu,
            user: rank,
            p_exact: inc.exact.then_some(exact[m]),
            p_asymptotic: if inc.asymptotic {
                Some(outage_user_asymptotic_s2(&cfg, rho, m + 1)?)
            } else {
                None
            },
            p_mc: est.map(|e| e.p_hat),
            mc_stderr: est.map(|e| e.stderr),
            p_oma: oma,
            throughput,
        });
    }
    Ok(rows)
}
