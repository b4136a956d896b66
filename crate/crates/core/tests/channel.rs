use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use reflector_core::channel::{
    path_loss_db, power_delay_profile, synthesize_frequency_response, ComplexTrace, SweepGrid,
    Window,
};
use reflector_core::geometry::Point2;
use reflector_core::propagation::{fspl_db, AntennaPattern, MaterialTable, SPEED_OF_LIGHT};
use reflector_core::raytrace::RayPath;

fn los(length: f64) -> RayPath {
    RayPath {
        vertices: vec![Point2::ORIGIN, Point2::new(length, 0.0)],
        surfaces: vec![],
        bounce_materials: vec![],
        total_length: length,
        delay: length / SPEED_OF_LIGHT,
    }
}

fn synth(paths: &[RayPath], grid: &SweepGrid) -> ComplexTrace {
    let iso = AntennaPattern::omni(0.0);
    synthesize_frequency_response(paths, grid, &iso, &iso, &MaterialTable::defaults()).unwrap()
}

#[test]
fn empty_path_list_is_zero_trace() {
    let t = synth(&[], &SweepGrid::paper());
    assert!(t.values.iter().all(|v| *v == Complex64::new(0.0, 0.0)));
}

#[test]
fn single_path_magnitude_and_phase_slope() {
    let g = SweepGrid::paper();
    let p = los(2.0);
    let t = synth(std::slice::from_ref(&p), &g);
    // |H| ∝ 1/f over the band; check against Friis sample by sample
    for (i, v) in t.values.iter().enumerate() {
        let expected = 10f64.powf(-fspl_db(2.0, g.frequency(i)).unwrap() / 20.0);
        assert!((v.norm() - expected).abs() < 1e-12 * expected);
    }
    // unwrapped phase slope −2πτ
    let mut unwrapped = vec![t.values[0].arg()];
    for w in t.values.windows(2) {
        let mut d = w[1].arg() - w[0].arg();
        while d > PI {
            d -= 2.0 * PI;
        }
        while d < -PI {
            d += 2.0 * PI;
        }
        unwrapped.push(unwrapped.last().unwrap() + d);
    }
    let slope = (unwrapped[400] - unwrapped[0]) / g.bandwidth_hz;
    assert!((slope + 2.0 * PI * p.delay).abs() < 1e-6 * 2.0 * PI * p.delay);
}

#[test]
fn los_path_loss_is_band_averaged_friis() {
    let g = SweepGrid::paper();
    let pl = path_loss_db(&synth(&[los(1.0)], &g), None).unwrap();
    // oracle: average the Friis power over the grid directly
    let mean: f64 = g
        .frequencies()
        .map(|f| 10f64.powf(-fspl_db(1.0, f).unwrap() / 10.0))
        .sum::<f64>()
        / g.n_points as f64;
    assert!((pl + 10.0 * mean.log10()).abs() < 1e-9);
    assert!((pl - fspl_db(1.0, 60e9).unwrap()).abs() < 0.01);
}

#[test]
fn linearity_of_synthesis() {
    let g = SweepGrid::paper();
    let p1 = vec![los(1.3), los(2.9)];
    let p2 = vec![los(4.4)];
    let all: Vec<_> = p1.iter().chain(&p2).cloned().collect();
    let a = synth(&p1, &g);
    let b = synth(&p2, &g);
    let both = synth(&all, &g);
    for i in 0..g.n_points {
        assert!((both.values[i] - (a.values[i] + b.values[i])).norm() < 1e-15);
    }
}

#[test]
fn two_resolvable_peaks() {
    let g = SweepGrid::paper();
    let bin = g.delay_resolution_s();
    // separated by 4 bins (≥ 2/B)
    let d1 = 20.0 * bin * SPEED_OF_LIGHT;
    let d2 = 24.0 * bin * SPEED_OF_LIGHT;
    let pdp = power_delay_profile(&synth(&[los(d1), los(d2)], &g), Window::Hann);
    let p = &pdp.powers;
    let local_max = |k: usize| p[k] > p[k - 1] && p[k] > p[k + 1];
    assert!(local_max(20) && local_max(24));
    assert!(p[22] < p[20] - 3.0 && p[22] < p[24] - 3.0);

    // rectangular window, exactly 2/B apart
    let d2 = 22.0 * bin * SPEED_OF_LIGHT;
    let pdp = power_delay_profile(&synth(&[los(d1), los(d2)], &g), Window::Rectangular);
    let p = &pdp.powers;
    assert!(p[21] < p[20] - 3.0 && p[21] < p[22] - 3.0);
}

#[test]
fn parseval_rectangular() {
    let g = SweepGrid::paper();
    let t = synth(&[los(1.7), los(3.1), los(6.2)], &g);
    let pdp = power_delay_profile(&t, Window::Rectangular);
    let total: f64 = pdp.linear_powers().iter().sum();
    assert!((total - t.mean_power()).abs() < 1e-9 * t.mean_power());
    assert_eq!(pdp.delays.len(), g.n_points);
    assert!((pdp.delays[1] - 1.0 / (401.0 * 5e6)).abs() < 1e-20);
}

proptest! {
    #[test]
    fn scaling_shifts_loss(k in 1e-3..1e3f64, phase in 0.0..std::f64::consts::TAU) {
        let g = SweepGrid::paper();
        let t = synth(&[los(2.0), los(3.5)], &g);
        let base = path_loss_db(&t, None).unwrap();
        let scaled = path_loss_db(&t.scaled(Complex64::from_polar(k, phase)), None).unwrap();
        prop_assert!((scaled - (base - 20.0 * k.log10())).abs() < 1e-9);
    }

    #[test]
    fn clamp_is_idempotent_and_bounded(level_db in 30.0..160.0f64, floor in 60.0..130.0f64) {
        let g = SweepGrid::new(60e9, 2e9, 11).unwrap();
        let amp = 10f64.powf(-level_db / 20.0);
        let t = ComplexTrace::from_fn(g, |_| Complex64::new(amp, 0.0));
        let raw = path_loss_db(&t, None).unwrap();
        let clamped = path_loss_db(&t, Some(floor)).unwrap();
        prop_assert!(clamped <= floor);
        prop_assert!(clamped <= raw + 1e-12);
        prop_assert_eq!(clamped, raw.min(floor));
        prop_assert_eq!(clamped.min(floor), clamped);
    }

    #[test]
    fn pdp_peak_tracks_delay(length in 0.5..25.0f64) {
        let g = SweepGrid::paper();
        let p = los(length);
        let pdp = power_delay_profile(&synth(std::slice::from_ref(&p), &g), Window::Rectangular);
        let peak_delay = pdp.delays[pdp.peak_bin()];
        prop_assert!((peak_delay - p.delay).abs() <= 0.5 * g.delay_resolution_s() + 1e-15);
    }
}
