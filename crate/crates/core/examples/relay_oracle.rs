//! The relay-branch closed form against direct numerical integration and
//! simulation of the two-hop event.

use noma_perf::analytic::{fixed_gain_constant, relay_branch_outage, Scenario1Config};
use noma_perf::db_to_linear;
use noma_perf::montecarlo::{estimate_relay_branch, TrialBatch};
use noma_perf::validation::{relay_branch_oracle, relay_branch_oracle_split};

fn main() -> noma_perf::Result<()> {
    for mu in 1..=3 {
        let cfg = Scenario1Config::preset(mu);
        for db in [0.0, 20.0, 40.0] {
            let rho = db_to_linear(db);
            let c = fixed_gain_constant(&cfg, rho);
            let z = cfg.thresholds(rho).epsilon.expect("condition holds");
            let closed = relay_branch_outage(mu, cfg.omega_sr, cfg.omega_rd_far, c, z);
            let quad = relay_branch_oracle(mu, cfg.omega_sr, cfg.omega_rd_far, c, z)?;
            let split = relay_branch_oracle_split(mu, cfg.omega_sr, cfg.omega_rd_far, c, z, 1.0)?;
            let mc = estimate_relay_branch(mu, cfg.omega_sr, cfg.omega_rd_far, c, z, &TrialBatch::new(200_000, 3))?;
            println!(
                "mu={mu} {db:>4} dB  closed {closed:.10e}  rel.err {:.1e} / {:.1e}  mc {:.3e} ± {:.1e}",
                (closed - quad).abs() / quad,
                (closed - split).abs() / split,
                mc.p_hat,
                mc.stderr
            );
        }
    }
    Ok(())
}
