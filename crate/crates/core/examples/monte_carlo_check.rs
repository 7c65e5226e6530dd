//! Link-level simulation against the closed forms.
//!
//! Usage: `cargo run --release --example monte_carlo_check -- [trials] [seed]`

use noma_perf::analytic::{outage_far_exact, outage_near_exact, outage_all_users_s2, Scenario1Config, Scenario2Config};
use noma_perf::db_to_linear;
use noma_perf::montecarlo::{estimate_cooperative, estimate_direct, Estimate, TrialBatch};

fn show(label: &str, exact: f64, e: Estimate) {
    let z = if e.stderr > 0.0 { (e.p_hat - exact) / e.stderr } else { 0.0 };
    println!("  {label:<8} exact {exact:.5e}  mc {:.5e} ± {:.1e}  z = {z:+.2}", e.p_hat, e.stderr);
}

fn main() -> noma_perf::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let batch = TrialBatch::new(trials, seed);

    for db in [10.0, 20.0] {
        let rho = db_to_linear(db);
        let c1 = Scenario1Config::preset(1);
        let e = estimate_cooperative(&c1, rho, &batch)?;
        println!("relay, {db} dB:");
        show("far", outage_far_exact(&c1, rho)?, e.far);
        show("near", outage_near_exact(&c1, rho)?, e.near);

        let c2 = Scenario2Config::preset(1);
        let e = estimate_direct(&c2, rho, &batch)?;
        println!("direct, {db} dB:");
        for (m, p) in outage_all_users_s2(&c2, rho)?.into_iter().enumerate() {
            show(&format!("user {}", m + 1), p, e.users[m]);
        }
    }
    Ok(())
}
