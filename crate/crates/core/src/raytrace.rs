//! Image-method tracer for specular wall and panel bounces.
//!
//! Walls reflect on either face and block every leg that crosses them. The
//! panel reflects only from its front face and does not occlude: it sits in
//! the outer corner, where it shadows nothing between the two corridors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    angle_between, crossing, line_parameters, mirror_point, CorridorLayout, Crossing, Point2,
    ReflectorPanel, Segment,
};
use crate::propagation::{MaterialId, MaterialTable, SPEED_OF_LIGHT};

/// Highest supported bounce order.
pub const MAX_SUPPORTED_ORDER: usize = 3;
pub const DEFAULT_MAX_ORDER: usize = 2;

/// Distance, in meters, below which a bounce point counts as touching a
/// segment end, or a leg as having zero length.
const ENDPOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    pub layout: CorridorLayout,
    pub panel: Option<ReflectorPanel>,
    pub panel_material: MaterialId,
}

impl Environment {
    pub fn new(layout: CorridorLayout, panel: Option<ReflectorPanel>) -> Result<Self> {
        layout.validate()?;
        if let Some(p) = &panel {
            for end in [p.endpoint_a, p.endpoint_b] {
                if !layout.contains(end) {
                    return Err(Error::DegenerateGeometry(format!(
                        "panel end ({}, {}) outside the corridor",
                        end.x, end.y
                    )));
                }
            }
        }
        Ok(Self {
            layout,
            panel,
            panel_material: MaterialId::metal(),
        })
    }

    pub fn without_panel(layout: CorridorLayout) -> Result<Self> {
        Self::new(layout, None)
    }

    pub fn with_panel_material(mut self, material: MaterialId) -> Self {
        self.panel_material = material;
        self
    }

    /// Fails on the first wall or panel material missing from `materials`.
    pub fn check_materials(&self, materials: &MaterialTable) -> Result<()> {
        for w in &self.layout.walls {
            materials.get(&w.material)?;
        }
        if self.panel.is_some() {
            materials.get(&self.panel_material)?;
        }
        Ok(())
    }

    fn reflectors(&self) -> Vec<Reflector> {
        let mut out: Vec<Reflector> = self
            .layout
            .walls
            .iter()
            .enumerate()
            .map(|(i, w)| Reflector {
                id: SurfaceId::Wall(i),
                segment: w.segment(),
                material: w.material.clone(),
                front: None,
            })
            .collect();
        if let Some(p) = &self.panel {
            out.push(Reflector {
                id: SurfaceId::Panel,
                segment: p.segment(),
                material: self.panel_material.clone(),
                front: Some(*p),
            });
        }
        out
    }

    fn leg_is_clear(&self, from: Point2, to: Point2) -> bool {
        let leg = Segment::new(from, to);
        let len = leg.length();
        if len < ENDPOINT_TOL {
            return false;
        }
        let tol = ENDPOINT_TOL / len;
        self.layout.walls.iter().all(|w| match crossing(&leg, &w.segment()) {
            Crossing::None => true,
            Crossing::At { t, .. } => t <= tol || t >= 1.0 - tol,
            // collinear contact with a wall blocks the leg
            Crossing::Collinear { t0, t1 } => t1 <= tol || t0 >= 1.0 - tol,
        })
    }
}

/// Identity of a reflecting surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceId {
    /// Index into `CorridorLayout::walls`.
    Wall(usize),
    Panel,
}

struct Reflector {
    id: SurfaceId,
    segment: Segment,
    material: MaterialId,
    front: Option<ReflectorPanel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayPath {
    /// Tx, bounce points in order, Rx.
    pub vertices: Vec<Point2>,
    pub surfaces: Vec<SurfaceId>,
    pub bounce_materials: Vec<MaterialId>,
    /// Meters.
    pub total_length: f64,
    /// Seconds.
    pub delay: f64,
}

impl RayPath {
    fn from_vertices(
        vertices: Vec<Point2>,
        surfaces: Vec<SurfaceId>,
        bounce_materials: Vec<MaterialId>,
    ) -> Self {
        let total_length = vertices.windows(2).map(|w| w[0].distance(w[1])).sum::<f64>();
        Self {
            vertices,
            surfaces,
            bounce_materials,
            total_length,
            delay: total_length / SPEED_OF_LIGHT,
        }
    }

    pub fn order(&self) -> usize {
        self.surfaces.len()
    }

    pub fn is_los(&self) -> bool {
        self.surfaces.is_empty()
    }

    pub fn uses_panel(&self) -> bool {
        self.surfaces.contains(&SurfaceId::Panel)
    }

    /// Angle between the incoming ray and the reflecting surface at bounce
    /// `k` (0-based), radians in `[0, π/2]`.
    pub fn grazing_angle(&self, k: usize, env: &Environment) -> Option<f64> {
        let surface = *self.surfaces.get(k)?;
        let seg = match surface {
            SurfaceId::Wall(i) => env.layout.walls.get(i)?.segment(),
            SurfaceId::Panel => env.panel?.segment(),
        };
        let incoming = self.vertices[k + 1] - self.vertices[k];
        let a = angle_between(incoming, seg.direction());
        Some(a.min(std::f64::consts::PI - a))
    }
}

/// Whether the straight Tx–Rx segment is cut by a wall. The panel is ignored.
pub fn los_blocked(tx: Point2, rx: Point2, env: &Environment) -> Result<bool> {
    env.layout.require_inside(tx)?;
    env.layout.require_inside(rx)?;
    if tx == rx {
        return Ok(false);
    }
    Ok(!env.leg_is_clear(tx, rx))
}

/// All specular paths with at most `max_order` bounces, sorted by delay.
pub fn enumerate_paths(
    tx: Point2,
    rx: Point2,
    env: &Environment,
    max_order: usize,
) -> Result<Vec<RayPath>> {
    if max_order > MAX_SUPPORTED_ORDER {
        return Err(Error::Domain(format!(
            "max_order {max_order} exceeds {MAX_SUPPORTED_ORDER}"
        )));
    }
    env.layout.require_inside(tx)?;
    env.layout.require_inside(rx)?;

    let reflectors = env.reflectors();
    let mut paths = Vec::new();
    let mut seen = BTreeSet::new();
    let mut sequence = Vec::with_capacity(max_order);
    for order in 0..=max_order {
        visit_sequences(&reflectors, order, &mut sequence, &mut |seq| {
            if let Some(path) = trace_sequence(tx, rx, env, &reflectors, seq) {
                if seen.insert(path.surfaces.clone()) {
                    paths.push(path);
                }
            }
        });
    }
    paths.sort_by(|a, b| {
        a.delay
            .total_cmp(&b.delay)
            .then_with(|| a.surfaces.cmp(&b.surfaces))
    });
    Ok(paths)
}

/// The single-bounce path off the panel, if it exists and is unobstructed.
pub fn panel_path(tx: Point2, rx: Point2, env: &Environment) -> Option<RayPath> {
    env.panel?;
    let reflectors = env.reflectors();
    let panel_index = reflectors.iter().position(|r| r.id == SurfaceId::Panel)?;
    trace_sequence(tx, rx, env, &reflectors, &[panel_index])
}

/// Calls `f` for every reflector sequence of length `order` without
/// immediate repeats.
fn visit_sequences(
    reflectors: &[Reflector],
    order: usize,
    seq: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if seq.len() == order {
        f(seq);
        return;
    }
    for i in 0..reflectors.len() {
        if seq.last() == Some(&i) {
            continue;
        }
        seq.push(i);
        visit_sequences(reflectors, order, seq, f);
        seq.pop();
    }
}

fn trace_sequence(
    tx: Point2,
    rx: Point2,
    env: &Environment,
    reflectors: &[Reflector],
    seq: &[usize],
) -> Option<RayPath> {
    if seq.is_empty() {
        return env
            .leg_is_clear(tx, rx)
            .then(|| RayPath::from_vertices(vec![tx, rx], vec![], vec![]));
    }

    // images[j] is the source after reflecting across the first j surfaces
    let mut images = Vec::with_capacity(seq.len() + 1);
    images.push(tx);
    for &i in seq {
        let last = *images.last().unwrap();
        images.push(mirror_point(last, &reflectors[i].segment));
    }

    let mut hits = vec![Point2::ORIGIN; seq.len()];
    let mut target = rx;
    for j in (0..seq.len()).rev() {
        let r = &reflectors[seq[j]];
        if let Some(panel) = &r.front {
            if panel.front_distance(target) <= 0.0 || panel.front_distance(images[j]) <= 0.0 {
                return None;
            }
        }
        let (t, u) = line_parameters(target, images[j + 1], &r.segment)?;
        let seg_len = r.segment.length();
        let u_tol = ENDPOINT_TOL / seg_len;
        if !(t > 0.0 && t < 1.0 && u > u_tol && u < 1.0 - u_tol) {
            return None;
        }
        let hit = r.segment.point_at(u);
        if hit.distance(target) < ENDPOINT_TOL {
            return None;
        }
        hits[j] = hit;
        target = hit;
    }
    if target.distance(tx) < ENDPOINT_TOL {
        return None;
    }

    let mut vertices = Vec::with_capacity(seq.len() + 2);
    vertices.push(tx);
    vertices.extend_from_slice(&hits);
    vertices.push(rx);
    if !vertices.windows(2).all(|w| env.leg_is_clear(w[0], w[1])) {
        return None;
    }
    Some(RayPath::from_vertices(
        vertices,
        seq.iter().map(|&i| reflectors[i].id).collect(),
        seq.iter().map(|&i| reflectors[i].material.clone()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{solve_reflector_orientation, WallSegment, PAPER_PANEL_WIDTH};

    fn open_room() -> CorridorLayout {
        let mut l = CorridorLayout::new(5.0, 10.0, 5.0, 5.0).unwrap();
        l.walls = vec![WallSegment::new(
            "floor",
            Point2::new(-10.0, 0.0),
            Point2::new(10.0, 0.0),
            MaterialId::plasterboard(),
        )];
        l
    }

    #[test]
    fn los_only_at_order_zero() {
        let env = Environment::without_panel(open_room()).unwrap();
        let (tx, rx) = (Point2::new(1.0, 1.0), Point2::new(4.0, 3.0));
        let paths = enumerate_paths(tx, rx, &env, 0).unwrap();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].is_los());
        assert!((paths[0].total_length - tx.distance(rx)).abs() < 1e-15);
    }

    #[test]
    fn single_mirror_bounce() {
        let env = Environment::without_panel(open_room()).unwrap();
        let paths = enumerate_paths(Point2::new(0.0, 1.0), Point2::new(2.0, 1.0), &env, 1).unwrap();
        assert_eq!(paths.len(), 2);
        let bounce = &paths[1];
        assert_eq!(bounce.order(), 1);
        assert!(bounce.vertices[1].distance(Point2::new(1.0, 0.0)) < 1e-12);
        assert!((bounce.total_length - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((bounce.delay - bounce.total_length / SPEED_OF_LIGHT).abs() < 1e-24);
    }

    #[test]
    fn order_limit_enforced() {
        let env = Environment::without_panel(CorridorLayout::paper()).unwrap();
        let p = Point2::new(1.0, 1.0);
        assert!(enumerate_paths(p, p, &env, 4).is_err());
    }

    #[test]
    fn outside_points_rejected() {
        let env = Environment::without_panel(CorridorLayout::paper()).unwrap();
        let inside = Point2::new(1.0, 1.0);
        let outside = Point2::new(3.0, 3.0);
        assert!(matches!(
            los_blocked(inside, outside, &env),
            Err(Error::OutsideFootprint { .. })
        ));
        assert!(enumerate_paths(outside, inside, &env, 1).is_err());
    }

    #[test]
    fn coincident_points_are_visible() {
        let env = Environment::without_panel(CorridorLayout::paper()).unwrap();
        let p = Point2::new(1.0, 1.0);
        assert!(!los_blocked(p, p, &env).unwrap());
    }

    #[test]
    fn panel_absent_gives_no_panel_path() {
        let env = Environment::without_panel(CorridorLayout::paper()).unwrap();
        assert!(panel_path(Point2::new(0.81, 4.75), Point2::new(3.69, 1.0), &env).is_none());
    }

    #[test]
    fn panel_back_face_does_not_reflect() {
        let layout = CorridorLayout::paper();
        let sol = solve_reflector_orientation(&layout, PAPER_PANEL_WIDTH).unwrap();
        let env = Environment::new(layout, Some(sol.panel)).unwrap();
        // tucked behind the panel, in the corner
        let behind = Point2::new(0.05, 0.05);
        assert!(panel_path(behind, Point2::new(3.69, 1.0), &env).is_none());
    }

    #[test]
    fn panel_outside_corridor_rejected() {
        let mut panel = crate::geometry::panel_from_alpha(0.5, 0.595);
        panel.endpoint_a = Point2::new(-1.0, 0.0);
        assert!(Environment::new(CorridorLayout::paper(), Some(panel)).is_err());
    }
}
