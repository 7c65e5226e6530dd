//! Drives a sweep from a TOML description, as the command-line tool does.

use noma_perf::cli::{run_sweep, write_csv, SweepSpec};

const SPEC: &str = r#"
[sweep]
scenario = "compare"
snr_start = 20
snr_stop = 40
snr_step = 10
mu = [1, 2]
trials = 0
include = ["exact", "asymptotic", "oma", "throughput"]

[cooperative]
users = 3
near = 3
relay_gain = "power-normalized"
d_sr = 0.3
"#;

fn main() -> noma_perf::Result<()> {
    let spec = SweepSpec::from_toml(SPEC)?;
    let rows = run_sweep(&spec)?;
    write_csv(&rows, std::io::stdout().lock())
}
