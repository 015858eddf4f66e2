//! Closed-form fixed-point existence and stability machinery: the fixed-point
//! height, the existence threshold E_s^min, the analytic map derivative
//! f'(Y*), and stability regions in (alpha, E_s, K, theta_d*) space.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::TouchdownState;
use crate::solve::bracketed_root;
use crate::stiffness::{stiffness_leading, stiffness_minimum, stiffness_symmetric};

/// A classified symmetric fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointRecord {
    pub y_star: f64,
    pub theta_d_star: f64,
    pub l_d_star: f64,
    pub f_prime: f64,
    pub stable: bool,
    /// d/dY_i of the sweep angle at the fixed point.
    pub d_delta_theta: f64,
    /// D(alpha, E_s, theta_d*) = 2 sqrt((Y* - cos a)(E_s - Y*)).
    pub d_value: f64,
}

/// One parameter sample of a stability region: the stability bounds plus the
/// existence threshold, each absent when no root lies in the scanned window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    pub param: f64,
    /// Flip boundary (f' = -1).
    pub lower: Option<f64>,
    /// Existence threshold (E_s^min or K^min); None for velocity regions.
    pub min_existence: Option<f64>,
    /// Tangency boundary (f' = +1).
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRegion {
    pub points: Vec<RegionPoint>,
}

/// Which stiffness enters the stability algebra: the special case replaces K
/// by the leading-order K-tilde at theta_d* = sqrt(cos alpha) (Remark 2); the
/// general mode keeps the full quadratic-root K at a prescribed theta_d*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionMode {
    SpecialCase,
    General { theta_d_star: f64 },
}

/// Apex height of the symmetric fixed point,
/// Y* = cos(a) + (theta* sin a - L* cos a)^2 / 2.
///
/// Requires the consistency condition theta* sin(a) <= L* cos(a); both paper
/// forms (the cos-a form and the E_s form) agree identically under it.
pub fn fixed_point_height(theta_d_star: f64, l_d_star: f64, alpha: f64) -> Result<f64> {
    let (sa, ca) = alpha.sin_cos();
    let m = theta_d_star * sa - l_d_star * ca;
    if m > 0.0 {
        return Err(Error::ExistenceViolated);
    }
    Ok(ca + 0.5 * m * m)
}

/// Equivalent form Y* = E_s - (theta* cos a + L* sin a)^2 / 2 with
/// E_s = (theta*^2 + L*^2)/2 + cos(a); exposed for the cross-check.
pub fn fixed_point_height_energy_form(theta_d_star: f64, l_d_star: f64, alpha: f64) -> f64 {
    let (sa, ca) = alpha.sin_cos();
    let e_s = 0.5 * (theta_d_star * theta_d_star + l_d_star * l_d_star) + ca;
    let p = theta_d_star * ca + l_d_star * sa;
    e_s - 0.5 * p * p
}

/// Existence threshold of Theorem 1: E_s^min = theta*^2 / (2 cos^2 a) + cos(a).
pub fn min_energy(theta_d_star: f64, alpha: f64) -> f64 {
    let ca = alpha.cos();
    theta_d_star * theta_d_star / (2.0 * ca * ca) + ca
}

/// D(alpha, E_s, theta*) = theta* cos(2a) sqrt(2E - theta*^2 - 2cos a)
///                       + sin(2a) [E - theta*^2 - cos a].
pub fn d_of(theta_d_star: f64, alpha: f64, energy: f64) -> f64 {
    let l2 = 2.0 * energy - theta_d_star * theta_d_star - 2.0 * alpha.cos();
    theta_d_star * (2.0 * alpha).cos() * l2.max(0.0).sqrt()
        + (2.0 * alpha).sin() * (energy - theta_d_star * theta_d_star - alpha.cos())
}

/// Analytic map derivative at the symmetric fixed point:
/// f'(Y*) = 1 - [sin(a) + D] d_i(dtheta)* with
/// d_i(dtheta)* = (2/D) [ theta*^2/K (4 + (theta*^2 - cos a)/L*^2)
///                        - L*/theta* (a + pi^2 sin(a)/(4K)) ].
///
/// Returns (f_prime, d_delta_theta, D). Requires Theorem 1 strictly.
pub fn map_derivative(
    theta_d_star: f64,
    alpha: f64,
    energy: f64,
    k: f64,
) -> Result<(f64, f64, f64)> {
    if energy <= min_energy(theta_d_star, alpha) {
        return Err(Error::ExistenceViolated);
    }
    let t2 = theta_d_star * theta_d_star;
    let l2 = 2.0 * energy - t2 - 2.0 * alpha.cos();
    if l2 <= 0.0 {
        return Err(Error::SingularLandingSpeed);
    }
    let l = l2.sqrt();
    let d = d_of(theta_d_star, alpha, energy);
    let pi = core::f64::consts::PI;
    let dd = (2.0 / d)
        * ((t2 / k) * (4.0 + (t2 - alpha.cos()) / l2)
            - (l / theta_d_star) * (alpha + pi * pi * alpha.sin() / (4.0 * k)));
    Ok((1.0 - (alpha.sin() + d) * dd, dd, d))
}

/// Classifies the fixed point via Theorem 2: stable iff
/// d_i(dtheta)* lies in (0, 2/(sin a + D)); cross-checked against |f'| < 1.
pub fn stability_check(
    theta_d_star: f64,
    alpha: f64,
    energy: f64,
    k: f64,
) -> Result<FixedPointRecord> {
    let (f_prime, d_delta_theta, d_value) = map_derivative(theta_d_star, alpha, energy, k)?;
    let l_d_star = (2.0 * energy - theta_d_star * theta_d_star - 2.0 * alpha.cos()).sqrt();
    let y_star = fixed_point_height(theta_d_star, l_d_star, alpha)?;
    let interval_test = d_delta_theta > 0.0 && d_delta_theta < 2.0 / (alpha.sin() + d_value);
    debug_assert_eq!(interval_test, f_prime.abs() < 1.0);
    Ok(FixedPointRecord {
        y_star,
        theta_d_star,
        l_d_star,
        f_prime,
        stable: interval_test,
        d_delta_theta,
        d_value,
    })
}

/// Remark-2 special case (theta* = sqrt(cos a), K replaced by K-tilde):
/// D(a, E) = cos(2a) sqrt(cos a (2E - 3 cos a)) + sin(2a)(E - 2 cos a),
/// d_i(dtheta)* = (2a/D) [16 a / pi^2 - sqrt((2E - 3 cos a)/cos a) (1 + a tan a)].
pub fn special_case_derivative(alpha: f64, energy: f64) -> Result<(f64, f64, f64)> {
    let ca = alpha.cos();
    let l2 = 2.0 * energy - 3.0 * ca;
    if l2 <= 0.0 {
        return Err(Error::SingularLandingSpeed);
    }
    let d = (2.0 * alpha).cos() * (ca * l2).sqrt() + (2.0 * alpha).sin() * (energy - 2.0 * ca);
    let pi = core::f64::consts::PI;
    let dd = (2.0 * alpha / d)
        * (16.0 * alpha / (pi * pi) - (l2 / ca).sqrt() * (1.0 + alpha * alpha.tan()));
    Ok((1.0 - (alpha.sin() + d) * dd, dd, d))
}

/// Upper energy boundary in the special case (closed form):
/// E_s^+ = 3 cos(a)/2 + 128 a^2 cos(a) / (pi^4 (1 + a tan a)^2).
pub fn energy_upper_special(alpha: f64) -> f64 {
    let pi = core::f64::consts::PI;
    1.5 * alpha.cos()
        + 128.0 * alpha * alpha * alpha.cos() / (pi.powi(4) * (1.0 + alpha * alpha.tan()).powi(2))
}

/// Special-case existence threshold E_s^min = 1/(2 cos a) + cos(a).
pub fn energy_min_special(alpha: f64) -> f64 {
    0.5 / alpha.cos() + alpha.cos()
}

fn energy_flip_special(alpha: f64) -> Option<f64> {
    // f' = -1 root; f' -> -inf at E_min+ and +1 at E_s^+, so bisect between.
    let lo = energy_min_special(alpha) + 1e-11;
    let hi = energy_upper_special(alpha) - 1e-12;
    bracketed_root(
        |e| {
            special_case_derivative(alpha, e)
                .map(|(f, _, _)| f + 1.0)
                .unwrap_or(f64::NAN)
        },
        lo,
        hi,
        1e-12,
    )
    .ok()
}

fn landing_speed(theta_d_star: f64, alpha: f64, energy: f64) -> Option<f64> {
    let l2 = 2.0 * energy - theta_d_star * theta_d_star - 2.0 * alpha.cos();
    (l2 > 0.0).then(|| l2.sqrt())
}

/// f' with the stiffness taken self-consistently from the symmetric quadratic
/// at (theta*, L_d(E)); NaN outside the valid domain.
fn f_prime_self_consistent(theta_d_star: f64, alpha: f64, energy: f64) -> f64 {
    let Some(l) = landing_speed(theta_d_star, alpha, energy) else {
        return f64::NAN;
    };
    let Ok(td) = TouchdownState::new(theta_d_star, l, alpha) else {
        return f64::NAN;
    };
    let Ok(k) = stiffness_symmetric(&td, alpha) else {
        return f64::NAN;
    };
    map_derivative(theta_d_star, alpha, energy, k.k)
        .map(|(f, _, _)| f)
        .unwrap_or(f64::NAN)
}

fn general_energy_bounds(theta_d_star: f64, alpha: f64) -> (Option<f64>, Option<f64>) {
    // Scan upward from the existence threshold for the tangency boundary
    // (d_i dtheta = 0, i.e. f' = +1), then bisect the flip boundary below it.
    let e_min = min_energy(theta_d_star, alpha);
    let mut upper = None;
    let mut prev: Option<(f64, f64)> = None;
    let mut e = e_min + 1e-9;
    let step = 0.002 * (1.0 + e_min);
    while e < e_min + 20.0 {
        let f = f_prime_self_consistent(theta_d_star, alpha, e) - 1.0;
        if f.is_finite() {
            if let Some((pe, pf)) = prev {
                if pf.signum() != f.signum() {
                    upper = bracketed_root(
                        |x| f_prime_self_consistent(theta_d_star, alpha, x) - 1.0,
                        pe,
                        e,
                        1e-12,
                    )
                    .ok();
                    break;
                }
            }
            prev = Some((e, f));
        }
        e += step;
    }
    let lower = upper.and_then(|up| {
        bracketed_root(
            |x| f_prime_self_consistent(theta_d_star, alpha, x) + 1.0,
            e_min + 1e-11,
            up,
            1e-12,
        )
        .ok()
    });
    (lower, upper)
}

/// E_s(alpha) stability region: per angle, the flip boundary E_s^-, the
/// existence threshold E_s^min, and the tangency boundary E_s^+.
pub fn energy_region(alphas: &[f64], mode: RegionMode) -> StabilityRegion {
    let points = alphas
        .iter()
        .map(|&a| match mode {
            RegionMode::SpecialCase => RegionPoint {
                param: a,
                lower: energy_flip_special(a),
                min_existence: Some(energy_min_special(a)),
                upper: Some(energy_upper_special(a)),
            },
            RegionMode::General { theta_d_star } => {
                let (lower, upper) = general_energy_bounds(theta_d_star, a);
                RegionPoint {
                    param: a,
                    lower,
                    min_existence: Some(min_energy(theta_d_star, a)),
                    upper,
                }
            }
        })
        .collect();
    StabilityRegion { points }
}

fn k_at_energy(theta_d_star: f64, alpha: f64, energy: f64) -> Option<f64> {
    let l = landing_speed(theta_d_star, alpha, energy)?;
    let td = TouchdownState::new(theta_d_star, l, alpha).ok()?;
    stiffness_symmetric(&td, alpha).ok().map(|e| e.k)
}

/// K(alpha, E_s) stability region: K^min from the minimum-stiffness formula,
/// K^- = K(alpha, E_s^-), K^+ = K(alpha, E_s^+), pointwise over the angles.
pub fn stiffness_region(alphas: &[f64], mode: RegionMode) -> StabilityRegion {
    let energy = energy_region(alphas, mode);
    let points = energy
        .points
        .iter()
        .map(|ep| {
            let theta = match mode {
                RegionMode::SpecialCase => ep.param.cos().sqrt(),
                RegionMode::General { theta_d_star } => theta_d_star,
            };
            RegionPoint {
                param: ep.param,
                lower: ep.lower.and_then(|e| k_at_energy(theta, ep.param, e)),
                min_existence: stiffness_minimum(theta, ep.param).ok().map(|e| e.k),
                upper: ep.upper.and_then(|e| k_at_energy(theta, ep.param, e)),
            }
        })
        .collect();
    StabilityRegion { points }
}

/// Which parameter a velocity region sweeps.
#[derive(Debug, Clone, PartialEq)]
pub enum VelocitySweep {
    OverEnergy { alpha: f64, energies: Vec<f64> },
    OverAlpha { energy: f64, alphas: Vec<f64> },
}

fn theta_bounds(alpha: f64, energy: f64) -> (Option<f64>, Option<f64>) {
    // theta* valid window: L_d real, Theorem 1 strict, quadratic solvable.
    let th_max = (2.0 * (energy - alpha.cos())).max(0.0).sqrt() * alpha.cos();
    let n = 600;
    let mut lower = None;
    let mut upper = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..n {
        let t = th_max * i as f64 / n as f64;
        if energy <= min_energy(t, alpha) {
            prev = None;
            continue;
        }
        let f = f_prime_self_consistent(t, alpha, energy);
        if !f.is_finite() {
            prev = None;
            continue;
        }
        if let Some((pt, pf)) = prev {
            // tangency boundary f' = +1 sits below the flip boundary f' = -1
            if (pf - 1.0).signum() != (f - 1.0).signum() {
                lower = bracketed_root(
                    |x| f_prime_self_consistent(x, alpha, energy) - 1.0,
                    pt,
                    t,
                    1e-12,
                )
                .ok();
            }
            if (pf + 1.0).signum() != (f + 1.0).signum() {
                upper = bracketed_root(
                    |x| f_prime_self_consistent(x, alpha, energy) + 1.0,
                    pt,
                    t,
                    1e-12,
                )
                .ok();
            }
        }
        prev = Some((t, f));
    }
    (lower, upper)
}

/// Stability interval [(theta_d*)^-, (theta_d*)^+] per sweep point, obtained by
/// solving the Theorem-2 boundary conditions for theta_d* with the
/// self-consistent symmetric stiffness.
pub fn velocity_region(sweep: &VelocitySweep) -> StabilityRegion {
    let points = match sweep {
        VelocitySweep::OverEnergy { alpha, energies } => energies
            .iter()
            .map(|&e| {
                let (lower, upper) = theta_bounds(*alpha, e);
                RegionPoint {
                    param: e,
                    lower,
                    min_existence: None,
                    upper,
                }
            })
            .collect(),
        VelocitySweep::OverAlpha { energy, alphas } => alphas
            .iter()
            .map(|&a| {
                let (lower, upper) = theta_bounds(a, *energy);
                RegionPoint {
                    param: a,
                    lower,
                    min_existence: None,
                    upper,
                }
            })
            .collect(),
    };
    StabilityRegion { points }
}

/// K-tilde in the special case, pi^2 cos(a) / (4 a^2); used by the Remark-2 algebra.
pub fn k_tilde_special(alpha: f64) -> f64 {
    stiffness_leading(alpha.cos().sqrt(), alpha).k
}
