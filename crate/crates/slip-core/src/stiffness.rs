//! Stiffness approximations enforcing symmetric stance (delta_theta = 2 alpha):
//! the quadratic-root formula K, the leading-order K-tilde, and the minimum
//! stiffness at minimum system energy.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::TouchdownState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StiffnessMethod {
    Quadratic,
    LeadingOrder,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessEstimate {
    pub k: f64,
    /// Discriminant of the quadratic in sqrt(K) (NaN-free: 0 for the leading order).
    pub discriminant: f64,
    pub method: StiffnessMethod,
}

/// Solves delta_theta_taylor = 2 alpha as a quadratic in sqrt(K):
/// K = [pi theta_d + sqrt(Delta)]^2 / (16 alpha^2) with
/// Delta = pi^2 theta_d^2 + 8 alpha [4 theta_d L_d - 2 (theta_d/L_d)(theta_d^2 - cos alpha) - pi^2 sin(alpha)/2].
///
/// Only the "+sqrt(Delta)" branch is physical and exposed.
pub fn stiffness_symmetric(td: &TouchdownState, alpha: f64) -> Result<StiffnessEstimate> {
    if td.l_d <= 0.0 {
        return Err(Error::SingularLandingSpeed);
    }
    let pi = core::f64::consts::PI;
    let q = 4.0 * td.theta_d * td.l_d
        - 2.0 * (td.theta_d / td.l_d) * (td.theta_d * td.theta_d - alpha.cos())
        - 0.5 * pi * pi * alpha.sin();
    let discriminant = pi * pi * td.theta_d * td.theta_d + 8.0 * alpha * q;
    if discriminant < 0.0 {
        return Err(Error::NoPhysicalRoot { discriminant });
    }
    let root = pi * td.theta_d + discriminant.sqrt();
    Ok(StiffnessEstimate {
        k: root * root / (16.0 * alpha * alpha),
        discriminant,
        method: StiffnessMethod::Quadratic,
    })
}

/// Leading-order stiffness K-tilde = (pi theta_d / (2 alpha))^2.
pub fn stiffness_leading(theta_d: f64, alpha: f64) -> StiffnessEstimate {
    let r = core::f64::consts::PI * theta_d / (2.0 * alpha);
    StiffnessEstimate {
        k: r * r,
        discriminant: 0.0,
        method: StiffnessMethod::LeadingOrder,
    }
}

/// Minimum stiffness at the minimum-energy state (L_d = theta_d* tan alpha):
/// K_min = [pi theta_d* + sqrt(Delta_min)]^2 / (16 alpha^2) with
/// Delta_min = pi^2 (theta_d*^2 - 4 alpha sin alpha) + 32 alpha theta_d*^2 tan alpha
///             - 16 alpha cot(alpha) (theta_d*^2 - cos alpha).
pub fn stiffness_minimum(theta_d_star: f64, alpha: f64) -> Result<StiffnessEstimate> {
    let pi = core::f64::consts::PI;
    let t2 = theta_d_star * theta_d_star;
    let (sa, ca) = alpha.sin_cos();
    let discriminant = pi * pi * (t2 - 4.0 * alpha * sa) + 32.0 * alpha * t2 * (sa / ca)
        - 16.0 * alpha * (ca / sa) * (t2 - ca);
    if discriminant < 0.0 {
        return Err(Error::NoPhysicalRoot { discriminant });
    }
    let root = pi * theta_d_star + discriminant.sqrt();
    Ok(StiffnessEstimate {
        k: root * root / (16.0 * alpha * alpha),
        discriminant,
        method: StiffnessMethod::Minimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::stance::sweep_angle_taylor;
    use core::f64::consts::PI;

    #[test]
    fn fig5_stiffness() {
        let a = PI / 9.0;
        let td =
            TouchdownState::new(a.cos().sqrt(), (2.0 * 1.48 - 3.0 * a.cos()).sqrt(), a).unwrap();
        let k = stiffness_symmetric(&td, a).unwrap().k;
        assert!((k - 18.3575).abs() < 1e-3);
        assert!((k - 18.35754490034133).abs() < 1e-10);
    }

    #[test]
    fn fig8_stiffness_at_unit_angular_velocity() {
        // Fig 8 caption: K = 34.77 at E_s = 1.51 for alpha = pi/12; the fixed
        // point tracked there has theta_d* = 1.
        let a = PI / 12.0;
        let e = 1.51;
        let l_d = (2.0 * e - 1.0 - 2.0 * a.cos()).sqrt();
        let td = TouchdownState::new(1.0, l_d, a).unwrap();
        let k = stiffness_symmetric(&td, a).unwrap().k;
        assert!((k / 34.77 - 1.0).abs() < 0.03, "k = {k}");
        assert!((k - 34.77).abs() < 0.01);
    }

    #[test]
    fn small_angle_special_case() {
        // K(pi/36, 1.5) with theta* = sqrt(cos alpha): paper quotes 322.
        let a = PI / 36.0;
        let td =
            TouchdownState::new(a.cos().sqrt(), (2.0 * 1.5 - 3.0 * a.cos()).sqrt(), a).unwrap();
        let k = stiffness_symmetric(&td, a).unwrap().k;
        assert!((k / 322.0 - 1.0).abs() < 0.01, "k = {k}");
    }

    #[test]
    fn quadratic_root_closes_the_sweep_equation() {
        // Plugging K back makes the Taylor sweep exactly 2 alpha.
        for &(theta_d, l_d, a) in &[
            (0.9693774397962377, 0.375395974462, PI / 9.0),
            (1.0, 0.3, PI / 12.0),
            (1.2, 0.5, 0.25),
            (0.8, 0.7, 0.5),
        ] {
            let td = TouchdownState::new(theta_d, l_d, a).unwrap();
            let k = stiffness_symmetric(&td, a).unwrap().k;
            let params = ModelParams::new(a, k).unwrap();
            let dth = sweep_angle_taylor(&td, &params).unwrap();
            assert!((dth - 2.0 * a).abs() < 1e-9, "residual {}", dth - 2.0 * a);
        }
    }

    #[test]
    fn leading_order_examples() {
        assert!((stiffness_leading(1.0, PI / 2.0).k - 1.0).abs() < 1e-15);
        let a = PI / 9.0;
        let kt = stiffness_leading(a.cos().sqrt(), a).k;
        assert!((kt - PI * PI * a.cos() / (4.0 * a * a)).abs() < 1e-12);
        assert!((kt - 19.028775570914643).abs() < 1e-12);
        assert!((stiffness_leading(1.0, 0.05).k - 986.9604401089358).abs() < 1e-9);
    }

    #[test]
    fn minimum_stiffness_values() {
        let a = PI / 9.0;
        let k = stiffness_minimum(a.cos().sqrt(), a).unwrap().k;
        assert!((k - 18.1013).abs() < 1e-3);

        assert!((stiffness_minimum(1.18, PI / 18.0).unwrap().k - 85.06).abs() < 1e-2);
        assert!((stiffness_minimum(0.95, PI / 9.0).unwrap().k - 17.79).abs() < 1e-2);
    }

    #[test]
    fn minimum_equals_quadratic_at_minimum_energy_state() {
        // K_min is the symmetric quadratic evaluated at L_d = theta* tan(alpha).
        for &(theta_star, a) in &[(1.18, PI / 18.0), (0.95, PI / 9.0), (1.5, 0.4), (0.9, 0.6)] {
            let km = stiffness_minimum(theta_star, a).unwrap().k;
            let td = TouchdownState::new(theta_star, theta_star * a.tan(), a).unwrap();
            let kq = stiffness_symmetric(&td, a).unwrap().k;
            assert!((km - kq).abs() < 1e-9, "{km} vs {kq}");
        }
    }

    #[test]
    fn special_case_discriminant_form_agrees() {
        // Delta_min at theta* = sqrt(cos alpha) reduces to
        // pi^2 (cos a - 4 a sin a) + 32 a sin a.
        for &a in &[PI / 36.0, PI / 12.0, PI / 9.0, PI / 6.0] {
            let d_full = stiffness_minimum(a.cos().sqrt(), a).unwrap().discriminant;
            let d_special = PI * PI * (a.cos() - 4.0 * a * a.sin()) + 32.0 * a * a.sin();
            assert!((d_full - d_special).abs() < 1e-10);
        }
    }

    #[test]
    fn approaches_leading_order_for_small_alpha() {
        // K (2 alpha / (pi theta_d))^2 -> 1 as alpha -> 0 at fixed theta_d.
        let theta_d = 1.0;
        let mut prev = f64::INFINITY;
        for &a in &[0.05, 0.02, 0.01, 0.005] {
            let td = TouchdownState::new(theta_d, 0.3, a).unwrap();
            let k = stiffness_symmetric(&td, a).unwrap().k;
            let ratio = k / stiffness_leading(theta_d, a).k;
            assert!((ratio - 1.0).abs() < prev);
            prev = (ratio - 1.0).abs();
        }
        assert!(prev < 3e-3);
    }

    #[test]
    fn rejects_zero_landing_speed() {
        let td = TouchdownState::new(1.0, 0.0, 0.3).unwrap();
        assert!(matches!(
            stiffness_symmetric(&td, 0.3),
            Err(Error::SingularLandingSpeed)
        ));
    }
}
