//! Per-user outage when every user is served on the direct link only.

use noma_perf::analytic::{outage_all_users_s2, Scenario2Config};
use noma_perf::db_to_linear;

fn main() -> noma_perf::Result<()> {
    let cfg = Scenario2Config::preset(1);
    let th = cfg.thresholds(1.0);
    println!("SINR thresholds: {:?}", th.gamma);
    for db in (0..=50).step_by(5) {
        let p = outage_all_users_s2(&cfg, db_to_linear(db as f64))?;
        let cols: Vec<String> = p.iter().map(|x| format!("{x:11.4e}")).collect();
        println!("{db:>3} dB  {}", cols.join(" "));
    }

    // A power split that cannot support user 1's rate is always in outage.
    let starved = Scenario2Config::new(vec![0.4, 0.35, 0.25], vec![1.0, 1.0, 1.0], vec![1.0; 3], 1);
    println!("starved user 1 at 60 dB: {}", outage_all_users_s2(&starved, 1e6)?[0]);
    Ok(())
}
