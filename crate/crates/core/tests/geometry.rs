use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use reflector_core::geometry::{
    mirror_point, orientation_residual, panel_from_alpha, segment_intersection,
    solve_reflector_orientation, CorridorLayout, Point2, Segment, SegmentIntersection,
    PAPER_PANEL_WIDTH,
};
use reflector_core::Error;

const A: f64 = PAPER_PANEL_WIDTH;

#[test]
fn tan_identities_hold_at_root() {
    let l = CorridorLayout::paper();
    let s = solve_reflector_orientation(&l, A).unwrap();
    let (sin, cos) = s.alpha.sin_cos();
    let lhs_beta = s.beta.tan() * (l.rx_length - 0.5 * A * cos);
    let rhs_beta = 0.5 * l.rx_width - 0.5 * A * sin;
    assert!((lhs_beta - rhs_beta).abs() < 1e-14);
    let lhs_gamma = s.gamma.tan() * (l.tx_length + l.rx_width - 0.5 * A * sin);
    let rhs_gamma = 0.5 * l.tx_width - 0.5 * A * cos;
    assert!((lhs_gamma - rhs_gamma).abs() < 1e-14);
    assert!((2.0 * s.alpha + s.beta - s.gamma - FRAC_PI_2).abs() < 1e-10);
    assert!(s.alpha > 0.0 && s.alpha < FRAC_PI_2);
}

#[test]
fn panel_at_published_angle() {
    let p = panel_from_alpha(42.198f64.to_radians(), A);
    assert!((p.endpoint_a.x - 0.4408).abs() < 5e-5);
    assert!((p.endpoint_b.y - 0.3997).abs() < 5e-5);
    assert!((p.center.x - 0.2204).abs() < 5e-5);
    assert!((p.center.y - 0.1998).abs() < 5e-5);
}

#[test]
fn no_bracket_means_no_root() {
    // L_R shorter than the panel's half-projection: only α = 90° is evaluable
    let l = CorridorLayout::new(2.75, 0.005, 0.004, 0.5).unwrap();
    assert!(matches!(solve_reflector_orientation(&l, A), Err(Error::NoRoot)));
}

#[test]
fn collinear_overlap_reported() {
    let s1 = Segment::new(Point2::new(0.0, 0.0), Point2::new(0.0, 2.0));
    let s2 = Segment::new(Point2::new(0.0, 1.0), Point2::new(0.0, 3.0));
    assert!(matches!(segment_intersection(&s1, &s2), SegmentIntersection::Overlap(..)));
}

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

proptest! {
    #[test]
    fn mirror_is_involution(px in coord(), py in coord(), ax in coord(), ay in coord(),
                            bx in coord(), by in coord()) {
        let line = Segment::new(Point2::new(ax, ay), Point2::new(bx, by));
        prop_assume!(line.length() > 1e-3);
        let p = Point2::new(px, py);
        let m = mirror_point(p, &line);
        let back = mirror_point(m, &line);
        prop_assert!(back.distance(p) < 1e-9);
        let d_p = line.signed_distance(p);
        let d_m = line.signed_distance(m);
        prop_assert!((d_p + d_m).abs() < 1e-9);
    }

    #[test]
    fn panel_endpoints_on_axes(alpha in 1e-6..(FRAC_PI_2 - 1e-6), width in 0.01..3.0f64) {
        let p = panel_from_alpha(alpha, width);
        prop_assert_eq!(p.endpoint_a.y, 0.0);
        prop_assert_eq!(p.endpoint_b.x, 0.0);
        prop_assert!((p.endpoint_a.distance(p.endpoint_b) - width).abs() < 1e-12 * width.max(1.0));
        prop_assert!(p.center.distance(p.endpoint_a.midpoint(p.endpoint_b)) < 1e-15);
    }

    #[test]
    fn intersection_point_lies_on_both(ax in coord(), ay in coord(), bx in coord(), by in coord(),
                                       cx in coord(), cy in coord(), dx in coord(), dy in coord()) {
        let s1 = Segment::new(Point2::new(ax, ay), Point2::new(bx, by));
        let s2 = Segment::new(Point2::new(cx, cy), Point2::new(dx, dy));
        prop_assume!(s1.length() > 1e-3 && s2.length() > 1e-3);
        if let SegmentIntersection::Point(p) = segment_intersection(&s1, &s2) {
            prop_assert!(s1.signed_distance(p).abs() < 1e-9);
            prop_assert!(s2.signed_distance(p).abs() < 1e-9);
        }
    }

    #[test]
    fn residual_is_finite_on_domain(alpha in 0.0..FRAC_PI_2) {
        let r = orientation_residual(alpha, &CorridorLayout::paper(), A).unwrap();
        prop_assert!(r.is_finite());
    }
}
