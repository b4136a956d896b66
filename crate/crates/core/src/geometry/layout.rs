use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Point2, Segment};
use crate::error::{Error, Result};
use crate::propagation::MaterialId;

/// Slack used when testing whether a point belongs to the closed footprint.
const FOOTPRINT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallSegment {
    pub name: String,
    pub a: Point2,
    pub b: Point2,
    pub material: MaterialId,
}

impl WallSegment {
    pub fn new(name: impl Into<String>, a: Point2, b: Point2, material: MaterialId) -> Self {
        Self {
            name: name.into(),
            a,
            b,
            material,
        }
    }

    pub fn segment(&self) -> Segment {
        Segment::new(self.a, self.b)
    }
}

/// The L-shaped floor plan.
///
/// Part A (receiver side) covers `x ∈ [0, L_R], y ∈ [0, l_R]`; part B
/// (transmitter side) covers `x ∈ [0, l_T], y ∈ [0, L_T + l_R]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorridorLayout {
    /// `L_T`: usable length of the transmitter corridor beyond part A.
    #[serde(rename = "L_T")]
    pub tx_length: f64,
    /// `L_R`: length of the receiver corridor.
    #[serde(rename = "L_R")]
    pub rx_length: f64,
    /// `l_T`: width of part B.
    #[serde(rename = "l_T")]
    pub tx_width: f64,
    /// `l_R`: width of part A.
    #[serde(rename = "l_R")]
    pub rx_width: f64,
    pub walls: Vec<WallSegment>,
}

/// One explicit wall in a layout document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub a: Point2,
    pub b: Point2,
    pub material: MaterialId,
}

/// JSON form of a layout.
///
/// ```json
/// { "L_T": 2.75, "L_R": 3.69, "l_T": 1.62, "l_R": 2.0,
///   "materials": { "inner_b": "glass" },
///   "walls": null }
/// ```
///
/// `walls`, when present, replaces the generated six-wall outline.
/// `materials` maps generated wall names to material ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDocument {
    #[serde(rename = "L_T")]
    pub tx_length: f64,
    #[serde(rename = "L_R")]
    pub rx_length: f64,
    #[serde(rename = "l_T")]
    pub tx_width: f64,
    #[serde(rename = "l_R")]
    pub rx_width: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walls: Option<Vec<WallSpec>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub materials: BTreeMap<String, MaterialId>,
}

impl LayoutDocument {
    pub fn paper() -> Self {
        Self {
            tx_length: 2.75,
            rx_length: 3.69,
            tx_width: 1.62,
            rx_width: 2.0,
            walls: None,
            materials: BTreeMap::new(),
        }
    }

    pub fn build(&self) -> Result<CorridorLayout> {
        let mut layout = CorridorLayout::new(
            self.tx_length,
            self.rx_length,
            self.tx_width,
            self.rx_width,
        )?;
        if let Some(walls) = &self.walls {
            layout.walls = walls
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let name = w.name.clone().unwrap_or_else(|| format!("wall{i}"));
                    WallSegment::new(name, w.a, w.b, w.material.clone())
                })
                .collect();
        }
        for (name, material) in &self.materials {
            let wall = layout
                .walls
                .iter_mut()
                .find(|w| &w.name == name)
                .ok_or_else(|| {
                    Error::InvalidLayout(format!("material assigned to unknown wall `{name}`"))
                })?;
            wall.material = material.clone();
        }
        layout.validate()?;
        Ok(layout)
    }
}

impl CorridorLayout {
    pub fn paper() -> Self {
        Self::new(2.75, 3.69, 1.62, 2.0).expect("paper layout is valid")
    }

    /// Builds the layout with its generated outline: six walls, all
    /// plasterboard except the inner wall of part B, which is glazed.
    pub fn new(tx_length: f64, rx_length: f64, tx_width: f64, rx_width: f64) -> Result<Self> {
        for (name, v) in [
            ("L_T", tx_length),
            ("L_R", rx_length),
            ("l_T", tx_width),
            ("l_R", rx_width),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidLayout(format!("{name} must be > 0, got {v}")));
            }
        }
        if tx_width >= rx_length {
            return Err(Error::InvalidLayout(format!(
                "part B width l_T = {tx_width} must be smaller than L_R = {rx_length}"
            )));
        }
        let top = tx_length + rx_width;
        let p = Point2::new;
        let plaster = MaterialId::plasterboard;
        let walls = vec![
            WallSegment::new("bottom", p(0.0, 0.0), p(rx_length, 0.0), plaster()),
            WallSegment::new("outer", p(0.0, 0.0), p(0.0, top), plaster()),
            WallSegment::new("rx_end", p(rx_length, 0.0), p(rx_length, rx_width), plaster()),
            WallSegment::new("tx_end", p(0.0, top), p(tx_width, top), plaster()),
            WallSegment::new("inner_b", p(tx_width, rx_width), p(tx_width, top), MaterialId::glass()),
            WallSegment::new("inner_a", p(tx_width, rx_width), p(rx_length, rx_width), plaster()),
        ];
        Ok(Self {
            tx_length,
            rx_length,
            tx_width,
            rx_width,
            walls,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.walls.is_empty() {
            return Err(Error::InvalidLayout("no walls".into()));
        }
        for w in &self.walls {
            if !(w.a.is_finite() && w.b.is_finite()) {
                return Err(Error::InvalidLayout(format!("wall `{}` is not finite", w.name)));
            }
            if w.a == w.b {
                return Err(Error::InvalidLayout(format!("wall `{}` has zero length", w.name)));
            }
        }
        Ok(())
    }

    /// `L_T + l_R`: y-coordinate of the far end of part B.
    pub fn tx_end_y(&self) -> f64 {
        self.tx_length + self.rx_width
    }

    /// Inner corner of the L, where the two inner walls meet.
    pub fn inner_corner(&self) -> Point2 {
        Point2::new(self.tx_width, self.rx_width)
    }

    /// Closed-footprint membership test.
    pub fn contains(&self, p: Point2) -> bool {
        let e = FOOTPRINT_EPS;
        let in_a = (-e..=self.rx_length + e).contains(&p.x) && (-e..=self.rx_width + e).contains(&p.y);
        let in_b = (-e..=self.tx_width + e).contains(&p.x) && (-e..=self.tx_end_y() + e).contains(&p.y);
        p.is_finite() && (in_a || in_b)
    }

    pub fn require_inside(&self, p: Point2) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsideFootprint { x: p.x, y: p.y })
        }
    }

    /// `T`: farthest transmitter position on the axis of part B.
    pub fn tx_far_point(&self) -> Point2 {
        Point2::new(self.tx_width / 2.0, self.tx_end_y())
    }

    /// `R`: receiver position at the end of part A, centered in its width.
    pub fn rx_point(&self) -> Point2 {
        Point2::new(self.rx_length, self.rx_width / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_outline() {
        let l = CorridorLayout::paper();
        assert_eq!(l.walls.len(), 6);
        assert!((l.tx_end_y() - 4.75).abs() < 1e-12);
        assert_eq!(l.tx_far_point(), Point2::new(0.81, 4.75));
        assert_eq!(l.rx_point(), Point2::new(3.69, 1.0));
    }

    #[test]
    fn footprint_is_l_shaped() {
        let l = CorridorLayout::paper();
        assert!(l.contains(Point2::new(3.0, 1.0)));
        assert!(l.contains(Point2::new(0.5, 4.0)));
        assert!(l.contains(Point2::new(3.69, 1.0)));
        assert!(!l.contains(Point2::new(3.0, 3.0)));
        assert!(!l.contains(Point2::new(-0.1, 1.0)));
        assert!(l.require_inside(Point2::new(2.0, 2.5)).is_err());
    }

    #[test]
    fn rejects_nonpositive_lengths() {
        assert!(CorridorLayout::new(0.0, 3.69, 1.62, 2.0).is_err());
        assert!(CorridorLayout::new(2.75, 3.69, -1.0, 2.0).is_err());
    }

    #[test]
    fn document_material_override() {
        let json = r#"{"L_T":2.75,"L_R":3.69,"l_T":1.62,"l_R":2.0,"materials":{"bottom":"metal"}}"#;
        let doc: LayoutDocument = serde_json::from_str(json).unwrap();
        let layout = doc.build().unwrap();
        let bottom = layout.walls.iter().find(|w| w.name == "bottom").unwrap();
        assert_eq!(bottom.material, MaterialId::metal());

        let bad = r#"{"L_T":2.75,"L_R":3.69,"l_T":1.62,"l_R":2.0,"materials":{"nope":"metal"}}"#;
        let doc: LayoutDocument = serde_json::from_str(bad).unwrap();
        assert!(doc.build().is_err());
    }

    #[test]
    fn explicit_walls_replace_outline() {
        let json = r#"{"L_T":2.75,"L_R":3.69,"l_T":1.62,"l_R":2.0,
            "walls":[{"a":{"x":0,"y":0},"b":{"x":5,"y":0},"material":"glass"}]}"#;
        let doc: LayoutDocument = serde_json::from_str(json).unwrap();
        let layout = doc.build().unwrap();
        assert_eq!(layout.walls.len(), 1);
        assert_eq!(layout.walls[0].name, "wall0");

        let zero = r#"{"L_T":2.75,"L_R":3.69,"l_T":1.62,"l_R":2.0,
            "walls":[{"a":{"x":1,"y":1},"b":{"x":1,"y":1},"material":"glass"}]}"#;
        let doc: LayoutDocument = serde_json::from_str(zero).unwrap();
        assert!(doc.build().is_err());
    }
}
