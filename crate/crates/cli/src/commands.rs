use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use reflector_core::calibration::{deembed_channel, read_sweep, write_sweep};
use reflector_core::campaign::OrientationReport;
use reflector_core::channel::ComplexTrace;
use reflector_core::geometry::{solve_reflector_orientation, LayoutDocument};
use serde::de::DeserializeOwned;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn solve_layout(
    layout: &LayoutDocument,
    panel_width: f64,
) -> reflector_core::Result<OrientationReport> {
    let layout = layout.build()?;
    let solution = solve_reflector_orientation(&layout, panel_width)?;
    Ok((&solution).into())
}

pub struct CalibrateArgs<'a> {
    pub measured: &'a Path,
    pub back_to_back: &'a Path,
    pub out: &'a Path,
    pub attenuator_db: f64,
    pub g_tx_dbi: f64,
    pub g_rx_dbi: f64,
}

pub fn calibrate(args: &CalibrateArgs) -> Result<ComplexTrace> {
    let measured = read_sweep(args.measured)
        .with_context(|| format!("reading {}", args.measured.display()))?;
    let bb = read_sweep(args.back_to_back)
        .with_context(|| format!("reading {}", args.back_to_back.display()))?;
    let channel = deembed_channel(&measured, &bb, args.attenuator_db, args.g_tx_dbi, args.g_rx_dbi)?;
    write_sweep(&channel, args.out).with_context(|| format!("writing {}", args.out.display()))?;
    Ok(channel)
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
