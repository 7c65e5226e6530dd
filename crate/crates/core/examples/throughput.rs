//! Delay-limited throughput of both deployments against the OMA benchmark.

use noma_perf::analytic::{throughput_oma, throughput_s1, throughput_s2, Scenario1Config, Scenario2Config, ScenarioConfig};
use noma_perf::db_to_linear;

fn main() -> noma_perf::Result<()> {
    println!("{:>3} {:>4} {:>8} {:>8} {:>8} {:>8}", "dB", "mu", "relay", "oma", "direct", "oma");
    for mu in 1..=3 {
        let c1 = Scenario1Config::preset(mu);
        let c2 = Scenario2Config::preset(mu);
        let (o1, o2) = (ScenarioConfig::Cooperative(c1.clone()), ScenarioConfig::Direct(c2.clone()));
        for db in (0..=50).step_by(10) {
            let rho = db_to_linear(db as f64);
            println!(
                "{db:>3} {mu:>4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
                throughput_s1(&c1, rho)?,
                throughput_oma(&o1, rho)?,
                throughput_s2(&c2, rho)?,
                throughput_oma(&o2, rho)?,
            );
        }
    }
    Ok(())
}
