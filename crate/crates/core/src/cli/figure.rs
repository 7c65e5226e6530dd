//! Committed sweep presets that regenerate each figure's curves.

use std::io::Write;

use super::config::SweepSpec;
use super::sweep::{run_sweep, write_csv};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
        }
    }

    /// The preset file as shipped.
    pub fn preset_source(self) -> &'static str {
        match self {
            FigureId::Fig2 => include_str!("../../presets/fig2.toml"),
            FigureId::Fig3 => include_str!("../../presets/fig3.toml"),
            FigureId::Fig4 => include_str!("../../presets/fig4.toml"),
            FigureId::Fig5 => include_str!("../../presets/fig5.toml"),
            FigureId::Fig6 => include_str!("../../presets/fig6.toml"),
            FigureId::Fig7 => include_str!("../../presets/fig7.toml"),
            FigureId::Fig8 => include_str!("../../presets/fig8.toml"),
        }
    }

    pub fn spec(self) -> Result<SweepSpec> {
        SweepSpec::from_toml(self.preset_source())
    }
}

/// `#` comment lines echoing every setting of the preset.
pub fn preset_header(id: FigureId) -> String {
    let mut out = format!("# figure {}\n", id.name());
    for line in id.preset_source().lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// Writes the preset header followed by the sweep CSV for `spec`, which is
/// normally `id.spec()` with command-line overrides applied.
pub fn write_figure<W: Write>(id: FigureId, spec: &SweepSpec, mut out: W) -> Result<()> {
    let rows = run_sweep(spec)?;
    out.write_all(preset_header(id).as_bytes())?;
    write_csv(&rows, out)
}
