//! Property tests for the algebraic invariants the closed forms must satisfy.

use proptest::prelude::*;
use slip_core::*;

fn alpha_strategy() -> impl Strategy<Value = f64> {
    0.02f64..1.3
}

proptest! {
    /// Rotation preserves the speed: theta_d^2 + L_d^2 = X'^2 + Y'^2.
    #[test]
    fn rotational_identity(x in 0.3f64..2.0, y in 0.0f64..1.0, a in alpha_strategy()) {
        prop_assume!(x * a.cos() - y * a.sin() > 1e-6);
        let td = touchdown_polar_from_cartesian(x, y, a).unwrap();
        let lhs = td.theta_d * td.theta_d + td.l_d * td.l_d;
        prop_assert!((lhs - (x * x + y * y)).abs() < 1e-12);
    }

    /// The mirrored takeoff state maps back to the Cartesian pair.
    #[test]
    fn takeoff_roundtrip(x in 0.3f64..2.0, y in 0.0f64..1.0, a in alpha_strategy()) {
        prop_assume!(x * a.cos() - y * a.sin() > 1e-6);
        let td = touchdown_polar_from_cartesian(x, y, a).unwrap();
        let mirrored = StanceState {
            t: 0.0,
            l: 1.0,
            l_dot: td.l_d,
            theta: a,
            theta_dot: td.theta_d,
        };
        let (x2, y_h, y2) = cartesian_from_polar_takeoff(&mirrored);
        prop_assert!((x2 - x).abs() < 1e-12);
        prop_assert!((y2 - y).abs() < 1e-12);
        prop_assert!((y_h - a.cos()).abs() < 1e-12);
    }

    /// The two energy forms differ by exactly L (cos(theta) - 1).
    #[test]
    fn energy_forms_differ_by_gravity_term(
        l in 0.5f64..1.0,
        l_dot in -1.0f64..1.0,
        theta in -1.0f64..1.0,
        theta_dot in -2.0f64..2.0,
        k in 1.0f64..200.0,
    ) {
        let params = ModelParams::new(0.3, k).unwrap();
        let s = StanceState { t: 0.0, l, l_dot, theta, theta_dot };
        let e = stance_energy(&s, &params);
        let diff = e - small_angle_energy(&s, &params);
        // exact in real arithmetic; in floats the shared terms cancel to a
        // few ulps of the total energy
        prop_assert!((diff - l * (theta.cos() - 1.0)).abs() < 8.0 * f64::EPSILON * e.abs().max(1.0));
    }

    /// Stance boundary identities: L(0) = L(t_C) = 1, L(t_C/2) = 1 - (B - A),
    /// theta(0) = -alpha, and the sweep equals theta(t_C) + alpha.
    #[test]
    fn stance_boundary_identities(
        theta_d in 0.5f64..1.5,
        l_d in 0.05f64..0.8,
        a in alpha_strategy(),
        k in 8.0f64..400.0,
    ) {
        let td = TouchdownState::new(theta_d, l_d, a).unwrap();
        let params = ModelParams::new(a, k).unwrap();
        let c = stance_coefficients(&td, &params).unwrap();
        prop_assert_eq!(radial_motion(0.0, &td, &params).unwrap(), 1.0);
        prop_assert!((radial_motion(c.t_contact, &td, &params).unwrap() - 1.0).abs() < 1e-12);
        let mid = radial_motion(0.5 * c.t_contact, &td, &params).unwrap();
        prop_assert!((mid - (1.0 - c.delta_l_max)).abs() < 1e-12);
        prop_assert_eq!(angular_motion(0.0, &td, &params).unwrap(), -a);
        let sweep = sweep_angle(&td, &params).unwrap();
        let via_motion = angular_motion(c.t_contact, &td, &params).unwrap() + a;
        prop_assert!((sweep - via_motion).abs() < 1e-12);
    }

    /// The symmetric-stiffness quadratic closes its defining equation:
    /// the Taylor sweep at K equals 2 alpha to 1e-9.
    #[test]
    fn symmetric_stiffness_closes(
        theta_d in 0.5f64..1.5,
        l_d in 0.1f64..0.9,
        a in 0.05f64..0.9,
    ) {
        let td = TouchdownState::new(theta_d, l_d, a).unwrap();
        match stiffness_symmetric(&td, a) {
            Ok(est) => {
                let params = ModelParams::new(a, est.k).unwrap();
                let sweep = sweep_angle_taylor(&td, &params).unwrap();
                prop_assert!((sweep - 2.0 * a).abs() < 1e-9);
            }
            Err(Error::NoPhysicalRoot { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
    }

    /// Touchdown velocities reconstructed from an apex height satisfy the
    /// energy split identity theta_d^2 + L_d^2 = 2 (E_s - cos alpha).
    #[test]
    fn apex_energy_split(a in 0.1f64..0.6, e_extra in 0.01f64..0.8, frac in 0.0f64..1.0) {
        let energy = a.cos() + e_extra;
        let cfg = MapConfig::new(a, energy, 25.0).unwrap();
        let y = a.cos() + frac * (energy - a.cos());
        if let Ok(td) = td_velocities_from_apex(y, &cfg) {
            let s = td.theta_d * td.theta_d + td.l_d * td.l_d;
            prop_assert!((s - 2.0 * (energy - a.cos())).abs() < 1e-12);
        }
    }

    /// Both fixed-point height forms agree wherever the existence condition
    /// holds.
    #[test]
    fn fixed_point_forms_agree(
        theta in 0.5f64..1.5,
        extra in 0.0f64..1.0,
        a in 0.05f64..0.9,
    ) {
        let l = theta * a.tan() + extra;
        let y1 = fixed_point_height(theta, l, a).unwrap();
        let y2 = slip_core::stability::fixed_point_height_energy_form(theta, l, a);
        prop_assert!((y1 - y2).abs() < 1e-12);
    }

    /// The minimum stiffness equals the symmetric quadratic at the
    /// minimum-energy landing speed.
    #[test]
    fn minimum_stiffness_consistency(theta in 0.6f64..1.5, a in 0.1f64..0.9) {
        let td = TouchdownState::new(theta, theta * a.tan(), a).unwrap();
        match (stiffness_minimum(theta, a), stiffness_symmetric(&td, a)) {
            (Ok(km), Ok(kq)) => prop_assert!((km.k - kq.k).abs() < 1e-9 * kq.k.max(1.0)),
            (Err(_), Err(_)) => {}
            (km, kq) => return Err(TestCaseError::fail(format!("mismatch {km:?} vs {kq:?}"))),
        }
    }
}

/// Fixed-point characterization on a grid: f(Y) = Y exactly where the sweep
/// is exactly symmetric, in both directions, with the formula constant
/// c = sin(alpha) + D(Y).
#[test]
fn fixed_point_characterization_grid() {
    let a = std::f64::consts::PI / 9.0;
    let cfg = MapConfig::new(a, 1.48, 18.35754490034133)
        .unwrap()
        .with_variant(SweepVariant::Taylor);
    let params = ModelParams::new(a, cfg.stiffness).unwrap();
    let (lo, hi) = cfg.domain();
    for i in 1..400 {
        let y = lo + (hi - lo) * i as f64 / 400.0;
        let Ok(td) = td_velocities_from_apex(y, &cfg) else {
            continue;
        };
        let Ok(sweep) = sweep_angle_taylor(&td, &params) else {
            continue;
        };
        let Ok(fy) = apex_return(y, &cfg) else {
            continue;
        };
        let gap = (fy - y).abs();
        let dev = (sweep - 2.0 * a).abs();
        let u = (cfg.energy - y).sqrt();
        let v = (y - a.cos()).sqrt();
        let c = a.sin() + 2.0 * u * v;
        // |f(Y) - Y| = c |dtheta - 2a| up to second order in the deviation
        if dev < 1e-10 {
            assert!(gap <= (c + 1.0) * 1e-10, "y={y} gap={gap}");
        }
        if gap < 1e-10 {
            assert!(
                dev <= 1e-10 / (0.5 * c.min(2.0)).min(0.5),
                "y={y} dev={dev}"
            );
        }
        if dev < 1e-6 {
            assert!((gap - c * dev).abs() <= 10.0 * dev * dev + 1e-14);
        }
    }
}
