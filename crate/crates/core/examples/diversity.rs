//! Diversity orders from log-log slopes of the exact curves at high SNR.

use noma_perf::analytic::{
    diversity_order_fit, outage_far_exact, outage_near_exact, outage_user_exact_s2, Scenario1Config,
    Scenario2Config,
};
use noma_perf::db_to_linear;

fn curve(f: impl Fn(f64) -> noma_perf::Result<f64>) -> noma_perf::Result<Vec<(f64, f64)>> {
    (0..=10)
        .map(|i| {
            let rho = db_to_linear(50.0 + i as f64);
            f(rho).map(|p| (rho, p))
        })
        .collect()
}

fn main() -> noma_perf::Result<()> {
    for mu in 1..=2 {
        let c1 = Scenario1Config::preset(mu);
        let far = diversity_order_fit(&curve(|r| outage_far_exact(&c1, r))?)?;
        let near = diversity_order_fit(&curve(|r| outage_near_exact(&c1, r))?)?;
        println!("mu={mu} relay: far {far:.3} (expect {}), near {near:.3} (expect {})", 2 * mu, 6 * mu);

        let c2 = Scenario2Config::preset(mu);
        for m in 1..=3 {
            let d = diversity_order_fit(&curve(|r| outage_user_exact_s2(&c2, r, m))?)?;
            println!("mu={mu} direct user {m}: {d:.3} (expect {})", mu as usize * m);
        }
    }
    Ok(())
}
