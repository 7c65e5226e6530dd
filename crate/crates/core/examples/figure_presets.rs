//! Regenerates a figure's curves from its shipped preset into a CSV file.
//!
//! Usage: `cargo run --release --example figure_presets -- fig6 out.csv`

use std::fs::File;

use noma_perf::cli::{preset_header, write_figure, FigureId};

fn main() -> noma_perf::Result<()> {
    let mut args = std::env::args().skip(1);
    let id = match args.next().as_deref() {
        Some(name) => FigureId::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| noma_perf::Error::Parse(format!("unknown figure `{name}`")))?,
        None => {
            for f in FigureId::ALL {
                print!("{}", preset_header(f));
            }
            return Ok(());
        }
    };
    let path = args.next().unwrap_or_else(|| format!("{}.csv", id.name()));
    let mut spec = id.spec()?;
    spec.trials = spec.trials.min(20_000);
    write_figure(id, &spec, File::create(&path)?)?;
    println!("wrote {path}");
    Ok(())
}
