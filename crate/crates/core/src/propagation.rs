//! Per-path link budget: free-space loss, scalar reflection coefficients and
//! azimuth antenna patterns.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angle_between, Point2};
use crate::raytrace::RayPath;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Horn pattern floor relative to its peak gain, dB.
pub const HORN_BACKLOBE_DB: f64 = 20.0;

const DEFAULT_MATERIALS: &str = include_str!("../data/materials.json");

pub fn db_to_amplitude(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

pub fn amplitude_to_db(amplitude: f64) -> f64 {
    20.0 * amplitude.log10()
}

pub fn db_to_power(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn power_to_db(power: f64) -> f64 {
    10.0 * power.log10()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MaterialId(pub String);

impl MaterialId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }
    pub fn metal() -> Self {
        Self::new("metal")
    }
    pub fn plasterboard() -> Self {
        Self::new("plasterboard")
    }
    pub fn glass() -> Self {
        Self::new("glass")
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MaterialId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub id: MaterialId,
    pub name: String,
    /// Scalar `|Γ|`, applied once per bounce.
    pub reflection_amplitude: f64,
    #[serde(default)]
    pub source: String,
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.reflection_amplitude) {
            return Err(Error::InvalidMaterial {
                id: self.id.to_string(),
                reason: format!(
                    "reflection amplitude {} outside [0, 1]",
                    self.reflection_amplitude
                ),
            });
        }
        Ok(())
    }
}

/// Immutable registry of materials keyed by id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Material>", into = "Vec<Material>")]
pub struct MaterialTable {
    materials: BTreeMap<MaterialId, Material>,
}

impl MaterialTable {
    pub fn new(materials: impl IntoIterator<Item = Material>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for m in materials {
            m.validate()?;
            if map.insert(m.id.clone(), m.clone()).is_some() {
                return Err(Error::InvalidMaterial {
                    id: m.id.to_string(),
                    reason: "duplicate id".into(),
                });
            }
        }
        Ok(Self { materials: map })
    }

    /// The shipped defaults (`data/materials.json`).
    pub fn defaults() -> Self {
        let list: Vec<Material> =
            serde_json::from_str(DEFAULT_MATERIALS).expect("bundled material table parses");
        Self::new(list).expect("bundled material table is valid")
    }

    pub fn get(&self, id: &MaterialId) -> Result<&Material> {
        self.materials
            .get(id)
            .ok_or_else(|| Error::UnknownMaterial(id.to_string()))
    }

    pub fn contains(&self, id: &MaterialId) -> bool {
        self.materials.contains_key(id)
    }

    /// Returns a copy with `id`'s amplitude replaced.
    pub fn with_amplitude(&self, id: &MaterialId, amplitude: f64) -> Result<Self> {
        let mut next = self.clone();
        let m = next
            .materials
            .get_mut(id)
            .ok_or_else(|| Error::UnknownMaterial(id.to_string()))?;
        m.reflection_amplitude = amplitude;
        m.validate()?;
        Ok(next)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.materials.values()
    }
}

impl Default for MaterialTable {
    fn default() -> Self {
        Self::defaults()
    }
}

impl TryFrom<Vec<Material>> for MaterialTable {
    type Error = Error;
    fn try_from(v: Vec<Material>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<MaterialTable> for Vec<Material> {
    fn from(t: MaterialTable) -> Self {
        t.materials.into_values().collect()
    }
}

pub fn reflection_amplitude(materials: &MaterialTable, id: &MaterialId) -> Result<f64> {
    Ok(materials.get(id)?.reflection_amplitude)
}

/// Friis free-space loss `20·log10(4πdf/c)`, dB.
pub fn fspl_db(distance: f64, frequency: f64) -> Result<f64> {
    if !(distance > 0.0 && distance.is_finite()) {
        return Err(Error::Domain(format!("distance must be > 0, got {distance}")));
    }
    if !(frequency > 0.0 && frequency.is_finite()) {
        return Err(Error::Domain(format!("frequency must be > 0, got {frequency}")));
    }
    Ok(20.0 * (4.0 * PI * distance * frequency / SPEED_OF_LIGHT).log10())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AntennaKind {
    Omni,
    Horn,
}

/// Azimuth-plane antenna model.
///
/// The horn main lobe is `peak − 3·(θ / (hpbw/2))²` dB, so it is exactly
/// 3 dB down at half the beamwidth, and it never drops below
/// `peak − HORN_BACKLOBE_DB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaPattern {
    pub kind: AntennaKind,
    pub peak_gain_dbi: f64,
    pub azimuth_hpbw_deg: f64,
    /// Unit pointing direction.
    pub boresight: Point2,
}

impl AntennaPattern {
    pub fn omni(peak_gain_dbi: f64) -> Self {
        Self {
            kind: AntennaKind::Omni,
            peak_gain_dbi,
            azimuth_hpbw_deg: 360.0,
            boresight: Point2::new(1.0, 0.0),
        }
    }

    pub fn horn(peak_gain_dbi: f64, azimuth_hpbw_deg: f64, boresight: Point2) -> Self {
        Self {
            kind: AntennaKind::Horn,
            peak_gain_dbi,
            azimuth_hpbw_deg,
            boresight: boresight.normalized(),
        }
    }

    /// 2 dBi omnidirectional transmitter.
    pub fn paper_tx() -> Self {
        Self::omni(2.0)
    }

    /// 22.5 dBi horn with 13° azimuth beamwidth.
    pub fn paper_rx(boresight: Point2) -> Self {
        Self::horn(22.5, 13.0, boresight)
    }

    pub fn pointed(mut self, boresight: Point2) -> Self {
        self.boresight = boresight.normalized();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.peak_gain_dbi.is_finite() {
            return Err(Error::Domain("antenna peak gain must be finite".into()));
        }
        if self.kind == AntennaKind::Horn {
            if self.azimuth_hpbw_deg.is_nan() || self.azimuth_hpbw_deg <= 0.0 {
                return Err(Error::Domain("horn beamwidth must be > 0".into()));
            }
            let n = self.boresight.norm();
            if !n.is_finite() || n == 0.0 {
                return Err(Error::Domain("horn boresight must be a nonzero direction".into()));
            }
        }
        Ok(())
    }
}

/// Gain toward `direction` (from the antenna outward), dBi.
pub fn antenna_gain_dbi(pattern: &AntennaPattern, direction: Point2) -> f64 {
    match pattern.kind {
        AntennaKind::Omni => pattern.peak_gain_dbi,
        AntennaKind::Horn => {
            let offset = angle_between(pattern.boresight, direction).to_degrees();
            let half = 0.5 * pattern.azimuth_hpbw_deg;
            let rolloff = 3.0 * (offset / half).powi(2);
            pattern.peak_gain_dbi - rolloff.min(HORN_BACKLOBE_DB)
        }
    }
}

/// Complex contribution of one path at `frequency`.
pub fn path_amplitude(
    path: &RayPath,
    frequency: f64,
    tx_pattern: &AntennaPattern,
    rx_pattern: &AntennaPattern,
    materials: &MaterialTable,
) -> Result<Complex64> {
    let spreading = SPEED_OF_LIGHT / (4.0 * PI * path.total_length * frequency);
    let mut reflection = 1.0;
    for m in &path.bounce_materials {
        reflection *= reflection_amplitude(materials, m)?;
    }
    let n = path.vertices.len();
    let departure = path.vertices[1] - path.vertices[0];
    let arrival = path.vertices[n - 2] - path.vertices[n - 1];
    let gains = db_to_amplitude(
        antenna_gain_dbi(tx_pattern, departure) + antenna_gain_dbi(rx_pattern, arrival),
    );
    let magnitude = spreading * reflection * gains;
    Ok(Complex64::from_polar(
        magnitude,
        -2.0 * PI * frequency * path.delay,
    ))
}
