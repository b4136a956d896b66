//! Planar primitives in the corridor frame `xOy`.
//!
//! The origin `O` is the outer corner of the L-shaped corridor. Part A runs
//! along `+x` toward the receiver, part B runs along `+y` toward the
//! transmitter positions. Everything is in meters and radians.

mod layout;
mod orientation;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use layout::{CorridorLayout, LayoutDocument, WallSegment, WallSpec};
pub use orientation::{
    orientation_residual, panel_from_alpha, solve_reflector_orientation, AngleSolution,
    ReflectorPanel, PAPER_PANEL_WIDTH,
};

/// Relative tolerance used by the intersection tests on cross products.
const PARALLEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at `angle` radians from `+x`.
    pub fn from_angle(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Direction angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        Point2::new(self.x / n, self.y / n)
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Smallest angle between two directions, in `[0, π]`.
pub fn angle_between(u: Point2, v: Point2) -> f64 {
    u.cross(v).atan2(u.dot(v)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn direction(&self) -> Point2 {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.a + self.direction() * t
    }

    /// Signed distance of `p` from the supporting line; positive on the left of `a → b`.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.direction().cross(p - self.a) / self.length()
    }
}

/// Outcome of intersecting two closed segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    /// No common point (disjoint or parallel).
    Disjoint,
    /// A single common point, including shared endpoints.
    Point(Point2),
    /// Collinear segments sharing a sub-segment of positive length.
    Overlap(Point2, Point2),
}

impl SegmentIntersection {
    pub fn point(&self) -> Option<Point2> {
        match *self {
            SegmentIntersection::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_disjoint(&self) -> bool {
        matches!(self, SegmentIntersection::Disjoint)
    }
}

/// Parametric form of an intersection: positions along `s1` and `s2` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Crossing {
    None,
    At { t: f64, u: f64 },
    /// Overlap on `s1` between the two parameters (`t0 <= t1`).
    Collinear { t0: f64, t1: f64 },
}

pub(crate) fn crossing(s1: &Segment, s2: &Segment) -> Crossing {
    let r = s1.direction();
    let s = s2.direction();
    let qp = s2.a - s1.a;
    let denom = r.cross(s);
    let scale = r.norm() * s.norm();

    if denom.abs() <= PARALLEL_EPS * scale {
        // parallel: only collinear segments can meet
        if qp.cross(r).abs() > PARALLEL_EPS * r.norm() * qp.norm().max(r.norm()) {
            return Crossing::None;
        }
        let rr = r.dot(r);
        let mut t0 = qp.dot(r) / rr;
        let mut t1 = (s2.b - s1.a).dot(r) / rr;
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = t0.max(0.0);
        let hi = t1.min(1.0);
        return if lo > hi {
            Crossing::None
        } else if (hi - lo) * r.norm() <= PARALLEL_EPS * r.norm().max(1.0) {
            Crossing::At {
                t: lo,
                u: ((s1.point_at(lo) - s2.a).dot(s) / s.dot(s)).clamp(0.0, 1.0),
            }
        } else {
            Crossing::Collinear { t0: lo, t1: hi }
        };
    }

    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    const EDGE: f64 = 1e-12;
    if (-EDGE..=1.0 + EDGE).contains(&t) && (-EDGE..=1.0 + EDGE).contains(&u) {
        Crossing::At {
            t: t.clamp(0.0, 1.0),
            u: u.clamp(0.0, 1.0),
        }
    } else {
        Crossing::None
    }
}

/// Intersects two closed segments.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    match crossing(s1, s2) {
        Crossing::None => SegmentIntersection::Disjoint,
        Crossing::At { t, .. } => SegmentIntersection::Point(s1.point_at(t)),
        Crossing::Collinear { t0, t1 } => {
            SegmentIntersection::Overlap(s1.point_at(t0), s1.point_at(t1))
        }
    }
}

/// Reflects `p` across the line supporting `line`.
pub fn mirror_point(p: Point2, line: &Segment) -> Point2 {
    let d = line.direction();
    let t = (p - line.a).dot(d) / d.dot(d);
    let foot = line.a + d * t;
    foot * 2.0 - p
}

/// Intersection of the infinite lines through `p0 → p1` and `line`, as
/// `(t along p0→p1, u along line)`. `None` when parallel.
pub(crate) fn line_parameters(p0: Point2, p1: Point2, line: &Segment) -> Option<(f64, f64)> {
    let r = p1 - p0;
    let s = line.direction();
    let denom = r.cross(s);
    if denom.abs() <= PARALLEL_EPS * r.norm() * s.norm() {
        return None;
    }
    let qp = line.a - p0;
    Some((qp.cross(s) / denom, qp.cross(r) / denom))
}
