//! Orientation of a flat reflector anchored across the outer corner.
//!
//! The panel of width `a` spans from `A = (a cos α, 0)` on `Ox` to
//! `B = (0, a sin α)` on `Oy`. The receiver at `R` looks at the panel center
//! `M` under `β` from `Ox`, the far transmitter `T` sees `M` under `γ` from
//! the corridor axis. Specular reflection at `M` requires
//! `2α + β − γ = π/2`, with `β` and `γ` both functions of `α`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{CorridorLayout, Point2, Segment};
use crate::error::{Error, Result};

/// Horizontal width of the measured metal plate, meters.
pub const PAPER_PANEL_WIDTH: f64 = 0.595;

const SCAN_STEPS: usize = 90;
const ROOT_TOL: f64 = 1e-13;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflectorPanel {
    pub width: f64,
    /// End on the `Ox` axis.
    pub endpoint_a: Point2,
    /// End on the `Oy` axis.
    pub endpoint_b: Point2,
    pub center: Point2,
    /// Angle between the panel and the corridor length, radians.
    pub alpha: f64,
}

impl ReflectorPanel {
    pub fn segment(&self) -> Segment {
        Segment::new(self.endpoint_a, self.endpoint_b)
    }

    /// Unit normal of the reflecting face, pointing away from the corner.
    pub fn front_normal(&self) -> Point2 {
        Point2::new(self.alpha.sin(), self.alpha.cos())
    }

    /// Positive when `p` is in front of the reflecting face.
    pub fn front_distance(&self, p: Point2) -> f64 {
        (p - self.endpoint_a).dot(self.front_normal())
    }
}

/// Panel anchored on both axes at angle `alpha`.
pub fn panel_from_alpha(alpha: f64, width: f64) -> ReflectorPanel {
    let (s, c) = alpha.sin_cos();
    let endpoint_a = Point2::new(width * c, 0.0);
    let endpoint_b = Point2::new(0.0, width * s);
    ReflectorPanel {
        width,
        endpoint_a,
        endpoint_b,
        center: Point2::new(0.5 * width * c, 0.5 * width * s),
        alpha,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleSolution {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub panel: ReflectorPanel,
    /// `2α + β − γ − π/2` at the returned root.
    pub residual: f64,
}

/// Numerators and denominators of `tan β` and `tan γ`.
struct Terms {
    beta_num: f64,
    beta_den: f64,
    gamma_num: f64,
    gamma_den: f64,
}

fn terms(alpha: f64, layout: &CorridorLayout, width: f64) -> Result<Terms> {
    let (s, c) = alpha.sin_cos();
    let half = 0.5 * width;
    let t = Terms {
        beta_num: 0.5 * layout.rx_width - half * s,
        beta_den: layout.rx_length - half * c,
        gamma_num: 0.5 * layout.tx_width - half * c,
        gamma_den: layout.tx_end_y() - half * s,
    };
    if !(t.beta_den > 0.0 && t.gamma_den > 0.0) {
        return Err(Error::DegenerateGeometry(format!(
            "denominators must be positive at α = {alpha} rad (got {}, {})",
            t.beta_den, t.gamma_den
        )));
    }
    Ok(t)
}

fn beta_gamma(alpha: f64, layout: &CorridorLayout, width: f64) -> Result<(f64, f64)> {
    let t = terms(alpha, layout, width)?;
    Ok((
        t.beta_num.atan2(t.beta_den),
        t.gamma_num.atan2(t.gamma_den),
    ))
}

/// Left side of the orientation equation minus `π/2`, in radians.
pub fn orientation_residual(alpha: f64, layout: &CorridorLayout, width: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&alpha) {
        return Err(Error::Domain(format!("α = {alpha} rad outside [0, π/2]")));
    }
    let (beta, gamma) = beta_gamma(alpha, layout, width)?;
    let r = 2.0 * alpha + beta - gamma - FRAC_PI_2;
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::DegenerateGeometry(format!("non-finite residual at α = {alpha}")))
    }
}

fn residual_derivative(alpha: f64, layout: &CorridorLayout, width: f64) -> Result<f64> {
    let t = terms(alpha, layout, width)?;
    let (s, c) = alpha.sin_cos();
    let half = 0.5 * width;
    // d/dα atan(n/d) = (n'd − n d') / (n² + d²)
    let (bn_d, bd_d) = (-half * c, half * s);
    let (gn_d, gd_d) = (half * s, -half * c);
    let d_beta = (bn_d * t.beta_den - t.beta_num * bd_d)
        / (t.beta_num * t.beta_num + t.beta_den * t.beta_den);
    let d_gamma = (gn_d * t.gamma_den - t.gamma_num * gd_d)
        / (t.gamma_num * t.gamma_num + t.gamma_den * t.gamma_den);
    Ok(2.0 + d_beta - d_gamma)
}

/// Safeguarded Newton iteration inside a sign-change bracket.
fn refine(
    mut lo: f64,
    mut hi: f64,
    layout: &CorridorLayout,
    width: f64,
) -> Result<f64> {
    let f = |a: f64| orientation_residual(a, layout, width);
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITER {
        let fx = f(x)?;
        if fx.abs() < ROOT_TOL {
            return Ok(x);
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        let df = residual_derivative(x, layout, width)?;
        let newton = x - fx / df;
        x = if df != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < f64::EPSILON * hi.max(1.0) {
            return Ok(x);
        }
    }
    Ok(x)
}

/// Solves for the panel angle that reflects the far transmitter's ray at
/// `M` straight into the receiver.
///
/// A 1° scan over `[0°, 90°]` brackets every sign change; each bracket is
/// refined by bisection with Newton steps.
pub fn solve_reflector_orientation(layout: &CorridorLayout, width: f64) -> Result<AngleSolution> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::Domain(format!("panel width must be > 0, got {width}")));
    }
    let grid: Vec<f64> = (0..=SCAN_STEPS)
        .map(|k| FRAC_PI_2 * k as f64 / SCAN_STEPS as f64)
        .collect();
    let values: Vec<Option<f64>> = grid
        .iter()
        .map(|&a| orientation_residual(a, layout, width).ok())
        .collect();

    let mut roots = Vec::new();
    for k in 0..SCAN_STEPS {
        let (Some(f0), Some(f1)) = (values[k], values[k + 1]) else {
            continue;
        };
        if f1 == 0.0 && k + 1 < SCAN_STEPS {
            roots.push(grid[k + 1]);
        } else if f0 * f1 < 0.0 {
            roots.push(refine(grid[k], grid[k + 1], layout, width)?);
        }
    }

    match roots.as_slice() {
        [] => Err(Error::NoRoot),
        [alpha] => {
            let alpha = *alpha;
            let (beta, gamma) = beta_gamma(alpha, layout, width)?;
            Ok(AngleSolution {
                alpha,
                beta,
                gamma,
                panel: panel_from_alpha(alpha, width),
                residual: orientation_residual(alpha, layout, width)?,
            })
        }
        many => Err(Error::AmbiguousRoots {
            roots_deg: many.iter().map(|r| r.to_degrees()).collect(),
        }),
    }
}
