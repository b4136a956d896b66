//! Measurement chain composition, back-to-back de-embedding and the sweep
//! CSV format.
//!
//! The measured response is `H_M = H_Tx · G_Tx · H_C · G_Rx · H_Rx`; the
//! back-to-back response through an attenuator `H_A` is
//! `H_BB = H_Tx · H_A · H_Rx`, and the channel is recovered as
//! `H_C = H_M · H_A / (H_BB · G_Tx · G_Rx)`. Antenna gains and the
//! attenuator are frequency-flat real factors.
//!
//! # Sweep CSV
//!
//! UTF-8, `\n` line endings, two header lines then one row per sample:
//!
//! ```text
//! # freq_hz,re,im
//! # center_hz=60000000000,bandwidth_hz=2000000000,n_points=401
//! 59000000000,0.001,-0.0002
//! ...
//! ```
//!
//! Numbers are written in Rust's shortest round-trip form, so a write/read
//! cycle is lossless. Frequencies must be strictly increasing and sit on the
//! declared grid.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{ComplexTrace, SweepGrid};
use crate::error::{Error, Result};
use crate::propagation::db_to_amplitude;

/// Attenuator used in the back-to-back reference, dB.
pub const PAPER_ATTENUATOR_DB: f64 = 40.0;

/// `|H_BB|` below this is treated as a division by zero.
pub const MIN_BACK_TO_BACK_MAGNITUDE: f64 = 1e-15;

const HEADER: &str = "# freq_hz,re,im";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigSignature {
    /// Transmit converter response.
    pub h_tx: ComplexTrace,
    /// Receive converter response.
    pub h_rx: ComplexTrace,
    pub g_tx_dbi: f64,
    pub g_rx_dbi: f64,
    pub attenuator_db: f64,
}

impl RigSignature {
    pub fn validate(&self) -> Result<()> {
        self.h_tx.check_grid(&self.h_rx)?;
        if !(self.attenuator_db >= 0.0 && self.attenuator_db.is_finite()) {
            return Err(Error::Domain(format!(
                "attenuator must be >= 0 dB, got {}",
                self.attenuator_db
            )));
        }
        if !(self.g_tx_dbi.is_finite() && self.g_rx_dbi.is_finite()) {
            return Err(Error::Domain("antenna gains must be finite".into()));
        }
        Ok(())
    }

    /// Unit converter responses on `grid`.
    pub fn ideal(grid: SweepGrid, g_tx_dbi: f64, g_rx_dbi: f64, attenuator_db: f64) -> Self {
        let one = ComplexTrace::from_fn(grid, |_| Complex64::new(1.0, 0.0));
        Self {
            h_tx: one.clone(),
            h_rx: one,
            g_tx_dbi,
            g_rx_dbi,
            attenuator_db,
        }
    }
}

fn attenuator_factor(attenuator_db: f64) -> f64 {
    db_to_amplitude(-attenuator_db)
}

/// Forward model of a VNA measurement through the rig.
pub fn compose_measured(channel: &ComplexTrace, rig: &RigSignature) -> Result<ComplexTrace> {
    rig.validate()?;
    channel.check_grid(&rig.h_tx)?;
    let gains = db_to_amplitude(rig.g_tx_dbi) * db_to_amplitude(rig.g_rx_dbi);
    let values = channel
        .values
        .iter()
        .zip(&rig.h_tx.values)
        .zip(&rig.h_rx.values)
        .map(|((c, t), r)| t * gains * c * r)
        .collect();
    Ok(ComplexTrace {
        grid: channel.grid,
        values,
    })
}

/// Response of the converters connected through the attenuator.
pub fn compose_back_to_back(rig: &RigSignature) -> Result<ComplexTrace> {
    rig.validate()?;
    let att = attenuator_factor(rig.attenuator_db);
    let values = rig
        .h_tx
        .values
        .iter()
        .zip(&rig.h_rx.values)
        .map(|(t, r)| t * att * r)
        .collect();
    Ok(ComplexTrace {
        grid: rig.h_tx.grid,
        values,
    })
}

/// Recovers the channel from a measurement and its back-to-back reference.
pub fn deembed_channel(
    measured: &ComplexTrace,
    back_to_back: &ComplexTrace,
    attenuator_db: f64,
    g_tx_dbi: f64,
    g_rx_dbi: f64,
) -> Result<ComplexTrace> {
    measured.check_grid(back_to_back)?;
    if let Some((index, v)) = back_to_back
        .values
        .iter()
        .enumerate()
        .find(|(_, v)| v.norm() < MIN_BACK_TO_BACK_MAGNITUDE)
    {
        return Err(Error::DivisionDegeneracy {
            index,
            magnitude: v.norm(),
        });
    }
    let scale = attenuator_factor(attenuator_db)
        / (db_to_amplitude(g_tx_dbi) * db_to_amplitude(g_rx_dbi));
    let values = measured
        .values
        .iter()
        .zip(&back_to_back.values)
        .map(|(m, bb)| m * scale / bb)
        .collect();
    Ok(ComplexTrace {
        grid: measured.grid,
        values,
    })
}

pub fn format_sweep(trace: &ComplexTrace) -> String {
    let g = &trace.grid;
    let mut out = String::with_capacity(64 * (g.n_points + 2));
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(
        out,
        "# center_hz={},bandwidth_hz={},n_points={}",
        g.center_hz, g.bandwidth_hz, g.n_points
    );
    for (f, v) in g.frequencies().zip(&trace.values) {
        let _ = writeln!(out, "{f},{},{}", v.re, v.im);
    }
    out
}

pub fn parse_sweep(text: &str) -> Result<ComplexTrace> {
    let err = |msg: String| Error::SweepFormat(msg);
    let mut lines = text.lines();
    match lines.next() {
        Some(l) if l.trim_end() == HEADER => {}
        other => return Err(err(format!("expected `{HEADER}`, found {other:?}"))),
    }
    let meta = lines
        .next()
        .ok_or_else(|| err("missing metadata line".into()))?;
    let meta = meta
        .strip_prefix('#')
        .ok_or_else(|| err(format!("metadata line must start with `#`: {meta:?}")))?;
    let (mut center, mut bandwidth, mut n_points) = (None, None, None);
    for field in meta.split(',') {
        let (key, value) = field
            .trim()
            .split_once('=')
            .ok_or_else(|| err(format!("malformed metadata field {field:?}")))?;
        match key {
            "center_hz" => center = Some(parse_f64(value)?),
            "bandwidth_hz" => bandwidth = Some(parse_f64(value)?),
            "n_points" => {
                n_points = Some(
                    value
                        .parse::<usize>()
                        .map_err(|e| err(format!("n_points {value:?}: {e}")))?,
                )
            }
            other => return Err(err(format!("unknown metadata key {other:?}"))),
        }
    }
    let grid = SweepGrid::new(
        center.ok_or_else(|| err("missing center_hz".into()))?,
        bandwidth.ok_or_else(|| err("missing bandwidth_hz".into()))?,
        n_points.ok_or_else(|| err("missing n_points".into()))?,
    )?;

    let mut values = Vec::with_capacity(grid.n_points);
    let mut last_freq = f64::NEG_INFINITY;
    let tol = 1e-6 * grid.step_hz();
    for (row, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(err(format!("row {row}: expected 3 columns, got {}", cols.len())));
        }
        let f = parse_f64(cols[0])?;
        if f <= last_freq {
            return Err(err(format!("row {row}: frequency {f} is not increasing")));
        }
        last_freq = f;
        if values.len() < grid.n_points && (f - grid.frequency(values.len())).abs() > tol {
            return Err(err(format!(
                "row {row}: frequency {f} off the declared grid (expected {})",
                grid.frequency(values.len())
            )));
        }
        values.push(Complex64::new(parse_f64(cols[1])?, parse_f64(cols[2])?));
    }
    if values.len() != grid.n_points {
        return Err(err(format!(
            "header declares {} points, file has {}",
            grid.n_points,
            values.len()
        )));
    }
    ComplexTrace::new(grid, values)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::SweepFormat(format!("bad number {s:?}: {e}")))
}

pub fn read_sweep(path: &Path) -> Result<ComplexTrace> {
    parse_sweep(&fs::read_to_string(path)?)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_sweep(trace: &ComplexTrace, path: &Path) -> Result<()> {
    write_atomic(path, format_sweep(trace).as_bytes())
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(grid: SweepGrid) -> ComplexTrace {
        ComplexTrace::from_fn(grid, |_| Complex64::new(1.0, 0.0))
    }

    #[test]
    fn identity_rig() {
        let g = SweepGrid::paper();
        let h = ComplexTrace::from_fn(g, |f| Complex64::from_polar(1e-4, f * 1e-9));
        let rig = RigSignature::ideal(g, 0.0, 0.0, 40.0);
        let m = compose_measured(&h, &rig).unwrap();
        assert_eq!(m, h);
    }

    #[test]
    fn gains_scale_measurement() {
        let g = SweepGrid::paper();
        let rig = RigSignature::ideal(g, 2.0, 22.5, 40.0);
        let m = compose_measured(&unit(g), &rig).unwrap();
        let expected = 10f64.powf(24.5 / 20.0);
        assert!(m.values.iter().all(|v| (v.norm() - expected).abs() < 1e-12 * expected));
    }

    #[test]
    fn back_to_back_levels() {
        let g = SweepGrid::paper();
        let bb = compose_back_to_back(&RigSignature::ideal(g, 2.0, 22.5, 40.0)).unwrap();
        assert!(bb.values.iter().all(|v| (v.norm() - 0.01).abs() < 1e-15));
        let bb0 = compose_back_to_back(&RigSignature::ideal(g, 0.0, 0.0, 0.0)).unwrap();
        assert!(bb0.values.iter().all(|v| *v == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn deembed_substitution() {
        let g = SweepGrid::paper();
        let bb = compose_back_to_back(&RigSignature::ideal(g, 0.0, 0.0, 40.0)).unwrap();
        let h = deembed_channel(&bb, &bb, 40.0, 0.0, 0.0).unwrap();
        assert!(h.values.iter().all(|v| (20.0 * v.norm().log10() + 40.0).abs() < 1e-12));
        let h = deembed_channel(&bb, &bb, 40.0, 2.0, 22.5).unwrap();
        assert!(h.values.iter().all(|v| (20.0 * v.norm().log10() + 64.5).abs() < 1e-12));
    }

    #[test]
    fn deembed_degenerate_sample() {
        let g = SweepGrid::new(1e9, 1e8, 5).unwrap();
        let mut bb = unit(g);
        bb.values[3] = Complex64::new(1e-16, 0.0);
        match deembed_channel(&unit(g), &bb, 40.0, 0.0, 0.0) {
            Err(Error::DivisionDegeneracy { index, .. }) => assert_eq!(index, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grid_mismatch() {
        let a = unit(SweepGrid::new(1e9, 1e8, 5).unwrap());
        let b = unit(SweepGrid::new(1e9, 1e8, 6).unwrap());
        assert!(matches!(
            deembed_channel(&a, &b, 40.0, 0.0, 0.0),
            Err(Error::GridMismatch(_))
        ));
        let rig = RigSignature::ideal(SweepGrid::new(1e9, 1e8, 6).unwrap(), 0.0, 0.0, 40.0);
        assert!(compose_measured(&a, &rig).is_err());
    }

    #[test]
    fn negative_attenuator_rejected() {
        let rig = RigSignature::ideal(SweepGrid::paper(), 0.0, 0.0, -1.0);
        assert!(compose_back_to_back(&rig).is_err());
    }

    #[test]
    fn malformed_files() {
        let g = SweepGrid::new(1e9, 4e8, 3).unwrap();
        let good = format_sweep(&unit(g));
        assert!(parse_sweep(&good).is_ok());

        assert!(parse_sweep(&good.replacen("# freq_hz,re,im", "freq,re,im", 1)).is_err());
        assert!(parse_sweep(&good.replacen("n_points=3", "n_points=4", 1)).is_err());
        let swapped = "# freq_hz,re,im\n# center_hz=1000000000,bandwidth_hz=400000000,n_points=3\n\
                       800000000,1,0\n1000000000,1,0\n1000000000,1,0\n";
        assert!(matches!(parse_sweep(swapped), Err(Error::SweepFormat(m)) if m.contains("increasing")));
        let off_grid = "# freq_hz,re,im\n# center_hz=1000000000,bandwidth_hz=400000000,n_points=3\n\
                        800000000,1,0\n1000100000,1,0\n1200000000,1,0\n";
        assert!(parse_sweep(off_grid).is_err());
        let bad_number = good.replacen(",1,0\n", ",x,0\n", 1);
        assert!(parse_sweep(&bad_number).is_err());
    }
}
