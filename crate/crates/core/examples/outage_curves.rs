//! Exact and high-SNR outage of the far and near users with relaying.

use noma_perf::analytic::{
    outage_far_asymptotic, outage_far_exact, outage_near_asymptotic, outage_near_exact, Scenario1Config,
};
use noma_perf::db_to_linear;

fn main() -> noma_perf::Result<()> {
    println!("{:>4} {:>6} {:>12} {:>12} {:>12} {:>12}", "mu", "dB", "far", "far~", "near", "near~");
    for mu in 1..=3 {
        let cfg = Scenario1Config::preset(mu);
        for db in (0..=40).step_by(10) {
            let rho = db_to_linear(db as f64);
            println!(
                "{mu:>4} {db:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
                outage_far_exact(&cfg, rho)?,
                outage_far_asymptotic(&cfg, rho)?,
                outage_near_exact(&cfg, rho)?,
                outage_near_asymptotic(&cfg, rho)?,
            );
        }
    }
    Ok(())
}
