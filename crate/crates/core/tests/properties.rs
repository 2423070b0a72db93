//! Property tests for the algebraic identities the closed forms must obey.

use camsyn_core::motion::{displacement, displacement_derivatives};
use camsyn_core::pressure::{pressure_tan, pressure_tan_from_motion};
use camsyn_core::profile::{cam_profile_point, pitch_point};
use camsyn_core::solver::{generate_cam, is_convex_polyline, solve_extended_angle};
use camsyn_core::DesignParams;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn feasible_params() -> impl Strategy<Value = DesignParams> {
    // eta kept clear of the 1/(2*pi) singularity; a4 under both roller
    // bounds, then filtered down to sets where the extended angle exists
    (20.0f64..120.0, 1u32..=5, 1u32..=3, 0.18f64..0.6, 0.05f64..0.9)
        .prop_map(|(p, n, m, eta, a4_frac)| {
            let e = eta * p;
            let b = 0.02 * p;
            let a4_max = (p / (2.0 * f64::from(n))).min(e - b);
            let a4 = (a4_frac * a4_max).max(1e-3);
            DesignParams::new(p, n, m, e, a4, b).unwrap()
        })
        .prop_filter("roller too large for the profile to cross the u-axis", |params| {
            solve_extended_angle(params, 1e-10).is_ok()
        })
}

proptest! {
    #[test]
    fn displacement_is_periodic_with_pitch(
        params in feasible_params(),
        psi in -10.0f64..10.0,
    ) {
        let diff = displacement(&params, psi + TAU) - displacement(&params, psi);
        prop_assert!((diff - params.p).abs() <= 1e-9 * params.p);
    }

    #[test]
    fn pitch_point_is_a_rigid_rotation(
        params in feasible_params(),
        psi in -10.0f64..10.0,
    ) {
        let s = displacement(&params, psi);
        let norm = pitch_point(&params, psi).norm();
        prop_assert!((norm - (params.e * params.e + s * s).sqrt()).abs() <= 1e-9 * params.p);
    }

    #[test]
    fn contact_point_sits_one_roller_radius_from_the_pitch_curve(
        params in feasible_params(),
        t in 0.0f64..1.0,
    ) {
        let ext = solve_extended_angle(&params, 1e-10).unwrap();
        let hi = TAU / f64::from(params.n) - ext.delta;
        let psi = ext.delta + (hi - ext.delta) * t;
        let c = cam_profile_point(&params, psi).unwrap();
        let o2 = pitch_point(&params, psi);
        let dist = c.distance_to(&o2).unwrap();
        prop_assert!((dist - params.a4).abs() <= 1e-9 * params.p,
            "psi={psi} dist={dist} a4={}", params.a4);
    }

    #[test]
    fn pressure_angle_forms_agree(
        params in feasible_params(),
        psi in 0.0f64..TAU,
    ) {
        let n = f64::from(params.n);
        prop_assume!((n * psi - PI).abs() > 1e-3);
        let a = pressure_tan(&params, psi);
        let b = pressure_tan_from_motion(&params, psi);
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn pressure_tan_is_antisymmetric_about_the_pole(
        params in feasible_params(),
        t in 1e-3f64..2.0,
    ) {
        let pole = PI / f64::from(params.n);
        let right = pressure_tan(&params, pole + t);
        let left = pressure_tan(&params, pole - t);
        prop_assert!((right + left).abs() <= 1e-12 * right.abs().max(1.0));
    }
}

proptest! {
    // profile generation is heavier, keep the case count down
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profiles_are_rotationally_symmetric(params in feasible_params()) {
        let cam = generate_cam(&params, 96).unwrap();
        prop_assert!(cam.closed);
        let rot = TAU / f64::from(params.n);
        for pt in &cam.points {
            let image = pt.rotated(rot);
            let nearest = cam
                .points
                .iter()
                .map(|q| image.distance_to(q).unwrap())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-6, "gap {nearest}");
        }
    }

    #[test]
    fn convexity_matches_the_eta_threshold(
        p in 30.0f64..80.0,
        eta in 0.2f64..0.6,
    ) {
        // away from the threshold itself, where discretization could flip
        prop_assume!((eta - 1.0 / PI).abs() > 0.02);
        let e = eta * p;
        let a4 = (0.3 * p / 2.0).min(e - 0.02 * p) * 0.9;
        let params = DesignParams::new(p, 1, 2, e, a4, 0.02 * p).unwrap();
        let cam = generate_cam(&params, 720).unwrap();
        let convex = is_convex_polyline(&cam).unwrap();
        prop_assert_eq!(convex, eta >= 1.0 / PI, "eta={}", eta);
    }
}

#[test]
fn derivative_scaling_is_linear_in_pitch() {
    let a = DesignParams::new(50.0, 1, 2, 9.0, 10.0, 4.25).unwrap();
    let b = DesignParams::new(100.0, 1, 2, 18.0, 10.0, 4.25).unwrap();
    let (da, _) = displacement_derivatives(&a);
    let (db, _) = displacement_derivatives(&b);
    assert!((db - 2.0 * da).abs() < 1e-12);
}
