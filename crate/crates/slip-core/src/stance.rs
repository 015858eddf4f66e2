//! Closed-form Poincare-Lindstedt approximations of the stance phase:
//! radial and angular trajectories, contact time, sweep angle, and the
//! compression diagnostics, truncated at O(eps^2) with eps = 1/sqrt(K).

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{ModelParams, TouchdownState};

/// Which sweep-angle formula a quantity was produced with: the closed form in
/// arccos(C) or its second-order Taylor expansion about eps = 0.
///
/// The map defaults to `Full`; the fixed-point and stability algebra is exact
/// only for `Taylor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariant {
    Full,
    Taylor,
}

/// Coefficients of the stance solution: L(t) oscillates sinusoidally around
/// 1 + A with amplitude B and detuned frequency omega_tilde / eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StanceCoefficients {
    /// omega_tilde(eps) = 1 - eps^2 theta_d^2 / 2.
    pub omega_tilde: f64,
    /// Center shift A(eps) = eps^2 (theta_d^2 - cos(alpha)).
    pub center_shift: f64,
    /// Amplitude B(eps) = eps sqrt(eps^2 (theta_d^2 - cos alpha)^2 + L_d^2).
    pub amplitude: f64,
    /// Phase parameter C = A/B in [-1, 1].
    pub phase: f64,
    /// Contact time t_C.
    pub t_contact: f64,
    /// Maximum leg compression B - A.
    pub delta_l_max: f64,
}

/// Sweep angle plus takeoff angle for one stance, tagged with the variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StanceSummary {
    pub coefficients: StanceCoefficients,
    pub delta_theta: f64,
    /// theta_TO = delta_theta - alpha.
    pub theta_takeoff: f64,
    pub variant: SweepVariant,
}

/// Computes A, B, C, omega_tilde, t_C and the maximum compression.
///
/// Errors with `DegenerateContact` when B = 0 (landing exactly at the
/// oscillation center with zero radial speed), where C is undefined.
pub fn stance_coefficients(
    td: &TouchdownState,
    params: &ModelParams,
) -> Result<StanceCoefficients> {
    let eps = params.epsilon;
    let shift = td.theta_d * td.theta_d - td.alpha.cos();
    let center_shift = eps * eps * shift;
    let amplitude = eps * (eps * eps * shift * shift + td.l_d * td.l_d).sqrt();
    if amplitude == 0.0 {
        return Err(Error::DegenerateContact);
    }
    let phase = center_shift / amplitude;
    let omega_tilde = 1.0 - 0.5 * eps * eps * td.theta_d * td.theta_d;
    let t_contact = 4.0 * eps / (2.0 - eps * eps * td.theta_d * td.theta_d) * phase.acos();
    Ok(StanceCoefficients {
        omega_tilde,
        center_shift,
        amplitude,
        phase,
        t_contact,
        delta_l_max: amplitude - center_shift,
    })
}

fn check_time(t: f64, t_contact: f64) -> Result<()> {
    // Allow a hair of roundoff at the endpoints.
    if t < -1e-15 || t > t_contact * (1.0 + 1e-12) + 1e-15 {
        return Err(Error::TimeOutOfRange { t, t_contact });
    }
    Ok(())
}

/// Radial stance trajectory
/// L(t) = 1 - eps L_d sin(w t / eps) + eps^2 (theta_d^2 - cos alpha)(1 - cos(w t / eps)),
/// valid on [0, t_C] where L <= 1.
pub fn radial_motion(t: f64, td: &TouchdownState, params: &ModelParams) -> Result<f64> {
    let coeffs = stance_coefficients(td, params)?;
    check_time(t, coeffs.t_contact)?;
    let eps = params.epsilon;
    let phi = coeffs.omega_tilde * t / eps;
    Ok(1.0 - eps * td.l_d * phi.sin()
        + eps * eps * (td.theta_d * td.theta_d - td.alpha.cos()) * (1.0 - phi.cos()))
}

/// Angular stance trajectory
/// theta(t) = -alpha + theta_d w t - (w t)^2 sin(alpha)/2 + 2 eps^2 L_d theta_d (1 - cos(w t / eps)).
pub fn angular_motion(t: f64, td: &TouchdownState, params: &ModelParams) -> Result<f64> {
    let coeffs = stance_coefficients(td, params)?;
    check_time(t, coeffs.t_contact)?;
    let eps = params.epsilon;
    let wt = coeffs.omega_tilde * t;
    Ok(-td.alpha + td.theta_d * wt - 0.5 * wt * wt * td.alpha.sin()
        + 2.0 * eps * eps * td.l_d * td.theta_d * (1.0 - (wt / eps).cos()))
}

/// Angle swept during stance (closed form):
/// dtheta = 2 eps theta_d [arccos C + 2 eps L_d (1 - C^2)] - 2 eps^2 sin(alpha) arccos(C)^2.
///
/// Algebraically equal to `angular_motion(t_C) + alpha`.
pub fn sweep_angle(td: &TouchdownState, params: &ModelParams) -> Result<f64> {
    let coeffs = stance_coefficients(td, params)?;
    let eps = params.epsilon;
    let ac = coeffs.phase.acos();
    Ok(
        2.0 * eps * td.theta_d * (ac + 2.0 * eps * td.l_d * (1.0 - coeffs.phase * coeffs.phase))
            - 2.0 * eps * eps * td.alpha.sin() * ac * ac,
    )
}

/// Second-order Taylor expansion of the sweep angle about eps = 0:
/// dtheta = pi theta_d eps + [4 theta_d L_d - 2 (theta_d/L_d)(theta_d^2 - cos alpha) - pi^2 sin(alpha)/2] eps^2.
///
/// Singular at L_d = 0.
pub fn sweep_angle_taylor(td: &TouchdownState, params: &ModelParams) -> Result<f64> {
    if td.l_d == 0.0 {
        return Err(Error::SingularLandingSpeed);
    }
    let eps = params.epsilon;
    let pi = core::f64::consts::PI;
    let second = 4.0 * td.theta_d * td.l_d
        - 2.0 * (td.theta_d / td.l_d) * (td.theta_d * td.theta_d - td.alpha.cos())
        - 0.5 * pi * pi * td.alpha.sin();
    Ok(pi * td.theta_d * eps + second * eps * eps)
}

/// Sweep angle for the requested variant.
pub fn sweep_angle_variant(
    td: &TouchdownState,
    params: &ModelParams,
    variant: SweepVariant,
) -> Result<f64> {
    match variant {
        SweepVariant::Full => sweep_angle(td, params),
        SweepVariant::Taylor => sweep_angle_taylor(td, params),
    }
}

/// Bundles the coefficients with the sweep angle and takeoff angle.
pub fn stance_summary(
    td: &TouchdownState,
    params: &ModelParams,
    variant: SweepVariant,
) -> Result<StanceSummary> {
    let coefficients = stance_coefficients(td, params)?;
    let delta_theta = sweep_angle_variant(td, params, variant)?;
    Ok(StanceSummary {
        coefficients,
        delta_theta,
        theta_takeoff: delta_theta - td.alpha,
        variant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::touchdown_polar_from_cartesian;
    use core::f64::consts::PI;

    fn fig2() -> (TouchdownState, ModelParams) {
        let td = touchdown_polar_from_cartesian(1.0, 0.1, 0.1).unwrap();
        (td, ModelParams::new(0.1, 15.0).unwrap())
    }

    #[test]
    fn fig2_coefficients_match_paper() {
        let (td, params) = fig2();
        let c = stance_coefficients(&td, &params).unwrap();
        assert!((c.center_shift - (-0.0016)).abs() < 1e-3);
        assert!((c.amplitude - 0.0515).abs() < 1e-3);
        assert!((c.delta_l_max - 0.0531).abs() < 1e-3);
        assert!((c.t_contact - 0.8558).abs() < 1e-3);
        // frozen exact values
        assert!((c.center_shift - (-0.001649209488408)).abs() < 1e-14);
        assert!((c.amplitude - 0.051494190887349).abs() < 1e-14);
        assert!((c.t_contact - 0.855361561433051).abs() < 1e-13);
    }

    #[test]
    fn special_case_contact_time() {
        // theta_d = sqrt(cos alpha) makes C = 0 and t_C = 2 pi eps / (2 - eps^2 theta_d^2).
        let alpha = 0.25f64;
        let td = TouchdownState::new(alpha.cos().sqrt(), 0.4, alpha).unwrap();
        let params = ModelParams::new(alpha, 20.0).unwrap();
        let c = stance_coefficients(&td, &params).unwrap();
        assert!(c.center_shift.abs() < 1e-16);
        assert!(c.phase.abs() < 1e-16);
        let eps = params.epsilon;
        let expected = 2.0 * PI * eps / (2.0 - eps * eps * td.theta_d * td.theta_d);
        assert!((c.t_contact - expected).abs() < 1e-14);
    }

    #[test]
    fn positive_shift_when_theta_d_large() {
        let td = TouchdownState::new(1.2, 0.3, 0.1).unwrap();
        let params = ModelParams::new(0.1, 50.0).unwrap();
        let c = stance_coefficients(&td, &params).unwrap();
        assert!(c.center_shift > 0.0);
    }

    #[test]
    fn degenerate_contact_is_an_error() {
        // theta_d^2 == cos(alpha) exactly (0.25 round-trips through acos/cos)
        // and L_d == 0 make the amplitude vanish.
        let theta_d = 0.5f64;
        let alpha = (theta_d * theta_d).acos();
        let td = TouchdownState::new(theta_d, 0.0, alpha).unwrap();
        let params = ModelParams::new(alpha, 12.0).unwrap();
        assert!(matches!(
            stance_coefficients(&td, &params),
            Err(Error::DegenerateContact)
        ));
    }

    #[test]
    fn radial_boundary_identities() {
        let (td, params) = fig2();
        let c = stance_coefficients(&td, &params).unwrap();
        assert_eq!(radial_motion(0.0, &td, &params).unwrap(), 1.0);
        let l_end = radial_motion(c.t_contact, &td, &params).unwrap();
        assert!((l_end - 1.0).abs() < 1e-12);
        let l_mid = radial_motion(0.5 * c.t_contact, &td, &params).unwrap();
        assert!((l_mid - (1.0 - c.delta_l_max)).abs() < 1e-12);
    }

    #[test]
    fn radial_stays_at_or_below_rest_length() {
        let (td, params) = fig2();
        let c = stance_coefficients(&td, &params).unwrap();
        for i in 0..=2000 {
            let t = c.t_contact * i as f64 / 2000.0;
            assert!(radial_motion(t, &td, &params).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn time_domain_enforced() {
        let (td, params) = fig2();
        assert!(matches!(
            radial_motion(-0.1, &td, &params),
            Err(Error::TimeOutOfRange { .. })
        ));
        assert!(matches!(
            angular_motion(2.0, &td, &params),
            Err(Error::TimeOutOfRange { .. })
        ));
    }

    #[test]
    fn fig2_angular_motion_and_sweep() {
        let (td, params) = fig2();
        let c = stance_coefficients(&td, &params).unwrap();
        assert_eq!(angular_motion(0.0, &td, &params).unwrap(), -0.1);
        let theta_to = angular_motion(c.t_contact, &td, &params).unwrap();
        assert!((theta_to - 0.7334).abs() < 1e-3);
        let dth = sweep_angle(&td, &params).unwrap();
        assert!((dth - 0.8334).abs() < 1e-3);
        // exact identity between the two routes
        assert!((dth - (theta_to + 0.1)).abs() < 1e-12);
        // frozen exact values
        assert!((theta_to - 0.733407737745022).abs() < 1e-13);
        assert!((dth - 0.833407737745022).abs() < 1e-13);
    }

    #[test]
    fn gravity_only_limit() {
        // theta_d -> 0+: theta(t) ~ -alpha - t^2 sin(alpha) / 2 for small t.
        let td = TouchdownState::new(1e-9, 0.3, 0.2).unwrap();
        let params = ModelParams::new(0.2, 100.0).unwrap();
        let t = 0.01;
        let th = angular_motion(t, &td, &params).unwrap();
        assert!((th - (-0.2 - 0.5 * t * t * 0.2f64.sin())).abs() < 1e-8);
    }

    #[test]
    fn sweep_taylor_fig2_and_special_case() {
        let (td, params) = fig2();
        let t = sweep_angle_taylor(&td, &params).unwrap();
        assert!((t - 0.834820220465212).abs() < 1e-14);

        // theta_d = sqrt(cos alpha): middle term vanishes identically.
        let alpha = 0.3f64;
        let tds = TouchdownState::new(alpha.cos().sqrt(), 0.5, alpha).unwrap();
        let p = ModelParams::new(alpha, 30.0).unwrap();
        let eps = p.epsilon;
        let expected = PI * tds.theta_d * eps
            + (4.0 * tds.theta_d * tds.l_d - 0.5 * PI * PI * alpha.sin()) * eps * eps;
        assert!((sweep_angle_taylor(&tds, &p).unwrap() - expected).abs() < 1e-15);
        // ... and the full formula with C = 0 collapses to the same expression.
        assert!((sweep_angle(&tds, &p).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn sweep_taylor_requires_landing_speed() {
        let td = TouchdownState::new(0.9, 0.0, 0.2).unwrap();
        let params = ModelParams::new(0.2, 25.0).unwrap();
        assert!(matches!(
            sweep_angle_taylor(&td, &params),
            Err(Error::SingularLandingSpeed)
        ));
    }

    #[test]
    fn negative_sweep_for_vanishing_theta_d() {
        // Only the gravity-torque term survives: dtheta < 0.
        let td = TouchdownState::new(1e-12, 0.3, 0.2).unwrap();
        let params = ModelParams::new(0.2, 50.0).unwrap();
        let dth = sweep_angle(&td, &params).unwrap();
        let c = stance_coefficients(&td, &params).unwrap();
        let eps = params.epsilon;
        let ac = c.phase.acos();
        assert!(dth < 0.0);
        assert!((dth - (-2.0 * eps * eps * 0.2f64.sin() * ac * ac)).abs() < 1e-11);
    }

    #[test]
    fn taylor_agrees_with_full_to_third_order() {
        // |full - taylor| must shrink like K^(-3/2): quadrupling K divides it by ~8.
        let td = touchdown_polar_from_cartesian(1.0, 0.1, 0.1).unwrap();
        let d = |k: f64| {
            let p = ModelParams::new(0.1, k).unwrap();
            (sweep_angle(&td, &p).unwrap() - sweep_angle_taylor(&td, &p).unwrap()).abs()
        };
        let (d100, d400) = (d(100.0), d(400.0));
        assert!(d400 <= d100 / 8.0 * 1.2, "d100={d100} d400={d400}");
    }

    #[test]
    fn angular_momentum_constant_to_second_order_along_symmetric_stance() {
        // With K from the symmetric-stance quadratic, P = L^2 theta' stays within
        // ~6 eps^2 of theta_d over the whole contact.
        let td = touchdown_polar_from_cartesian(1.0, 0.1, 0.1).unwrap();
        let k = crate::stiffness::stiffness_symmetric(&td, 0.1).unwrap().k;
        let params = ModelParams::new(0.1, k).unwrap();
        let c = stance_coefficients(&td, &params).unwrap();
        let eps2 = params.epsilon * params.epsilon;
        for i in 0..=500 {
            let t = c.t_contact * i as f64 / 500.0;
            let l = radial_motion(t, &td, &params).unwrap();
            // theta'(t) from differentiating angular_motion
            let w = c.omega_tilde;
            let th_dot = td.theta_d * w - w * w * t * td.alpha.sin()
                + 2.0 * params.epsilon * td.l_d * td.theta_d * w * (w * t / params.epsilon).sin();
            let p = l * l * th_dot;
            assert!(
                (p - td.theta_d).abs() <= 6.0 * eps2,
                "t={t} dev={}",
                (p - td.theta_d).abs()
            );
        }
    }

    #[test]
    fn summary_wires_takeoff_angle() {
        let (td, params) = fig2();
        let s = stance_summary(&td, &params, SweepVariant::Full).unwrap();
        assert!((s.theta_takeoff - (s.delta_theta - 0.1)).abs() < 1e-15);
        assert_eq!(s.variant, SweepVariant::Full);
    }
}
