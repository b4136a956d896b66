//! Swept channel responses, band-averaged path loss and delay profiles.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagation::{path_amplitude, power_to_db, AntennaPattern, MaterialTable};
use crate::raytrace::RayPath;

/// Instrument noise floor used for the corridor campaign, dB.
pub const PAPER_NOISE_FLOOR_DB: f64 = 108.0;

/// Uniform sweep with inclusive endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub center_hz: f64,
    pub bandwidth_hz: f64,
    pub n_points: usize,
}

impl SweepGrid {
    pub fn new(center_hz: f64, bandwidth_hz: f64, n_points: usize) -> Result<Self> {
        let g = Self {
            center_hz,
            bandwidth_hz,
            n_points,
        };
        g.validate()?;
        Ok(g)
    }

    /// 59–61 GHz in 401 points, 5 MHz apart.
    pub fn paper() -> Self {
        Self {
            center_hz: 60e9,
            bandwidth_hz: 2e9,
            n_points: 401,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(Error::InvalidGrid(format!("n_points = {} < 2", self.n_points)));
        }
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(Error::InvalidGrid(format!("bandwidth {} must be > 0", self.bandwidth_hz)));
        }
        if !(self.center_hz - 0.5 * self.bandwidth_hz > 0.0 && self.center_hz.is_finite()) {
            return Err(Error::InvalidGrid("sweep must stay above 0 Hz".into()));
        }
        Ok(())
    }

    pub fn step_hz(&self) -> f64 {
        self.bandwidth_hz / (self.n_points - 1) as f64
    }

    pub fn start_hz(&self) -> f64 {
        self.center_hz - 0.5 * self.bandwidth_hz
    }

    pub fn frequency(&self, i: usize) -> f64 {
        self.start_hz() + self.bandwidth_hz * i as f64 / (self.n_points - 1) as f64
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.frequency(i))
    }

    /// Spacing of the inverse-transform delay bins, `1 / (n · step)`.
    pub fn delay_resolution_s(&self) -> f64 {
        1.0 / (self.n_points as f64 * self.step_hz())
    }

    pub(crate) fn same_as(&self, other: &SweepGrid) -> bool {
        let tol = 1e-9 * self.step_hz();
        self.n_points == other.n_points
            && (self.center_hz - other.center_hz).abs() <= tol
            && (self.bandwidth_hz - other.bandwidth_hz).abs() <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexTrace {
    pub grid: SweepGrid,
    pub values: Vec<Complex64>,
}

impl ComplexTrace {
    pub fn new(grid: SweepGrid, values: Vec<Complex64>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.n_points {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a {}-point grid",
                values.len(),
                grid.n_points
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!("sample {i} is not finite")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: SweepGrid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.n_points],
        }
    }

    pub fn from_fn(grid: SweepGrid, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            grid,
            values: grid.frequencies().map(f).collect(),
        }
    }

    pub fn mean_power(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.values.len() as f64
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    pub(crate) fn check_grid(&self, other: &ComplexTrace) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)))
        }
    }
}

/// Sum of all path contributions at each sweep frequency.
pub fn synthesize_frequency_response(
    paths: &[RayPath],
    grid: &SweepGrid,
    tx_pattern: &AntennaPattern,
    rx_pattern: &AntennaPattern,
    materials: &MaterialTable,
) -> Result<ComplexTrace> {
    grid.validate()?;
    let mut trace = ComplexTrace::zeros(*grid);
    for path in paths {
        for (i, f) in grid.frequencies().enumerate() {
            trace.values[i] += path_amplitude(path, f, tx_pattern, rx_pattern, materials)?;
        }
    }
    Ok(trace)
}

/// `−10·log10(mean |H|²)`, clamped to `noise_floor_db` when given.
///
/// An all-zero trace has no finite loss: it reports the floor if one is
/// configured and `f64::INFINITY` otherwise.
pub fn path_loss_db(trace: &ComplexTrace, noise_floor_db: Option<f64>) -> Result<f64> {
    if trace.values.is_empty() {
        return Err(Error::Domain("empty trace".into()));
    }
    let mean = trace.mean_power();
    let loss = if mean > 0.0 {
        -power_to_db(mean)
    } else {
        f64::INFINITY
    };
    Ok(match noise_floor_db {
        Some(floor) => loss.min(floor),
        None => loss,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    #[default]
    Rectangular,
    Hann,
}

impl Window {
    fn weights(self, n: usize) -> Vec<f64> {
        match self {
            Window::Rectangular => vec![1.0; n],
            Window::Hann => (0..n)
                .map(|k| 0.5 * (1.0 - (2.0 * PI * k as f64 / (n - 1) as f64).cos()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerDelayProfile {
    /// Seconds, bin `n` at `n · delay_resolution`.
    pub delays: Vec<f64>,
    /// dB, normalized so a single path peaks at its own gain.
    pub powers: Vec<f64>,
    pub window: Window,
}

impl PowerDelayProfile {
    pub fn linear_powers(&self) -> Vec<f64> {
        self.powers.iter().map(|p| 10f64.powf(p / 10.0)).collect()
    }

    /// Index of the strongest bin.
    pub fn peak_bin(&self) -> usize {
        self.powers
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

/// Inverse DFT of the windowed sweep, scaled by the window sum.
pub fn power_delay_profile(trace: &ComplexTrace, window: Window) -> PowerDelayProfile {
    let n = trace.values.len();
    let weights = window.weights(n);
    let norm: f64 = weights.iter().sum();
    let mut buf: Vec<Complex64> = trace
        .values
        .iter()
        .zip(&weights)
        .map(|(v, w)| v * (w / norm))
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let resolution = trace.grid.delay_resolution_s();
    PowerDelayProfile {
        delays: (0..n).map(|k| k as f64 * resolution).collect(),
        powers: buf
            .iter()
            .map(|v| power_to_db(v.norm_sqr().max(f64::MIN_POSITIVE)))
            .collect(),
        window,
    }
}
