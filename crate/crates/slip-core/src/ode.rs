//! Numerical ground truth: integrates the full nonlinear stance equations
//!
//!   L''  = L (theta')^2 + K (1 - L) - cos(theta)
//!   (L^2 theta')' = L sin(theta)
//!
//! with takeoff event detection (L returns to 1 with L' > 0), composes full
//! hybrid apex-to-apex steps, and solves the shooting problem for the exact
//! symmetric stiffness K*.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{
    cartesian_from_polar_takeoff, stance_energy, touchdown_polar_from_cartesian, ApexState,
    ModelParams, StanceState, TouchdownState,
};
use crate::solve::bracketed_root;
use crate::stiffness::stiffness_symmetric;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegratorStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// Result of one stance integration: the accepted-step samples (strictly
/// increasing in t, first one the touchdown state), the localized takeoff
/// state, and step statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<StanceState>,
    pub takeoff: StanceState,
    pub stats: IntegratorStats,
}

/// Shooting solution of the symmetric boundary problem
/// theta(t*, K*) = alpha, L(t*, K*) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult {
    pub k_star: f64,
    pub t_star: f64,
    /// Boundary mismatch theta(t*) - alpha at the solution.
    pub residual: f64,
}

/// Flight apex reached from a takeoff state; `immediate` marks a descending
/// takeoff (Y' < 0), where the takeoff height itself is reported as the apex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightStep {
    pub apex: ApexState,
    pub immediate: bool,
}

type Y4 = [f64; 4]; // (L, L', theta, theta')

fn rhs(y: &Y4, k: f64) -> Y4 {
    let (l, l_dot, theta, theta_dot) = (y[0], y[1], y[2], y[3]);
    [
        l_dot,
        l * theta_dot * theta_dot + k * (1.0 - l) - theta.cos(),
        theta_dot,
        (theta.sin() - 2.0 * l_dot * theta_dot) / l,
    ]
}

// Dormand-Prince 5(4) coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order embedded weights.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

fn axpy(y: &Y4, h: f64, terms: &[(f64, &Y4)]) -> Y4 {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One Dormand-Prince step from (t, y); returns (y5, error_estimate).
fn dp_step(y: &Y4, h: f64, k: f64, stats: &mut IntegratorStats) -> (Y4, f64, Y4) {
    let k1 = rhs(y, k);
    let k2 = rhs(&axpy(y, h, &[(A21, &k1)]), k);
    let k3 = rhs(&axpy(y, h, &[(A31, &k1), (A32, &k2)]), k);
    let k4 = rhs(&axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]), k);
    let k5 = rhs(
        &axpy(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        k,
    );
    let k6 = rhs(
        &axpy(
            y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ),
        k,
    );
    let y5 = axpy(
        y,
        h,
        &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
    );
    let k7 = rhs(&y5, k);
    let y4 = axpy(
        y,
        h,
        &[
            (E1, &k1),
            (E3, &k3),
            (E4, &k4),
            (E5, &k5),
            (E6, &k6),
            (E7, &k7),
        ],
    );
    stats.rhs_evals += 7;
    let mut err: f64 = 0.0;
    for i in 0..4 {
        err = err.max((y5[i] - y4[i]).abs());
    }
    (y5, err, k7)
}

fn error_norm(err: f64, y: &Y4, y_new: &Y4, atol: f64, rtol: f64) -> f64 {
    let mut scale: f64 = 0.0;
    for i in 0..4 {
        scale = scale.max(y[i].abs().max(y_new[i].abs()));
    }
    err / (atol + rtol * scale)
}

fn to_state(t: f64, y: &Y4) -> StanceState {
    StanceState {
        t,
        l: y[0],
        l_dot: y[1],
        theta: y[2],
        theta_dot: y[3],
    }
}

/// Integrates one stance from the touchdown conditions until the takeoff
/// event (L crosses 1 from below with L' > 0), localized by bisection on the
/// step size. Errors when the leg collapses (L <= 0) or no takeoff occurs
/// within 10 spring periods.
pub fn integrate_stance(td: &TouchdownState, params: &ModelParams) -> Result<Trajectory> {
    integrate_from([1.0, -td.l_d, -td.alpha, td.theta_d], params)
}

fn integrate_from(y0: Y4, params: &ModelParams) -> Result<Trajectory> {
    let k = params.stiffness;
    let rtol = params.tolerances.integrator_rel;
    let atol = params.tolerances.integrator_abs;
    let t_max = 10.0 * 2.0 * core::f64::consts::PI * params.epsilon;
    let h_max = 0.5 * params.epsilon;

    let mut stats = IntegratorStats::default();
    let mut t = 0.0;
    let mut y: Y4 = y0;
    let mut samples = Vec::new();
    samples.push(to_state(t, &y));
    let mut h = (0.01 * params.epsilon).min(h_max);

    while t < t_max {
        h = h.min(h_max).min(t_max - t);
        let (y_new, err, _) = dp_step(&y, h, k, &mut stats);
        let norm = error_norm(err, &y, &y_new, atol, rtol);
        if norm > 1.0 {
            stats.rejected += 1;
            h *= (0.9 * norm.powf(-0.2)).max(0.2);
            continue;
        }
        stats.accepted += 1;
        if y_new[0] <= 0.0 {
            return Err(Error::LegCollapse { t: t + h });
        }
        // takeoff event: L - 1 goes from negative to non-negative, ascending
        if y[0] - 1.0 < 0.0 && y_new[0] - 1.0 >= 0.0 && y_new[1] > 0.0 {
            let (t_event, y_event) = localize_takeoff(t, &y, h, k, params, &mut stats);
            samples.push(to_state(t_event, &y_event));
            return Ok(Trajectory {
                takeoff: to_state(t_event, &y_event),
                samples,
                stats,
            });
        }
        t += h;
        y = y_new;
        samples.push(to_state(t, &y));
        if norm > 0.0 {
            h *= (0.9 * norm.powf(-0.2)).min(5.0);
        } else {
            h *= 5.0;
        }
    }
    Err(Error::NoTakeoff { t_max })
}

/// Bisects the step size from the last pre-event point until the event time is
/// localized to the configured tolerance.
fn localize_takeoff(
    t0: f64,
    y0: &Y4,
    h_event: f64,
    k: f64,
    params: &ModelParams,
    stats: &mut IntegratorStats,
) -> (f64, Y4) {
    let mut lo = 0.0;
    let mut hi = h_event;
    let mut y_hi = {
        let (y, _, _) = dp_step(y0, h_event, k, stats);
        y
    };
    while hi - lo > params.tolerances.event {
        let mid = 0.5 * (lo + hi);
        let (y_mid, _, _) = dp_step(y0, mid, k, stats);
        if y_mid[0] - 1.0 >= 0.0 {
            hi = mid;
            y_hi = y_mid;
        } else {
            lo = mid;
        }
    }
    (t0 + hi, y_hi)
}

/// Ballistic flight from a takeoff state: Y_apex = Y_TO + (Y'_TO)^2 / 2 with
/// X' preserved; a descending takeoff reports the takeoff height, flagged.
pub fn flight_step(x_dot: f64, y: f64, y_dot: f64) -> FlightStep {
    if y_dot < 0.0 {
        return FlightStep {
            apex: ApexState {
                y,
                x_dot,
                energy: 0.5 * x_dot * x_dot + y,
            },
            immediate: true,
        };
    }
    let y_apex = y + 0.5 * y_dot * y_dot;
    FlightStep {
        apex: ApexState {
            y: y_apex,
            x_dot,
            energy: 0.5 * x_dot * x_dot + y_apex,
        },
        immediate: false,
    }
}

/// Shooting solve of the symmetric boundary problem: find K* with
/// theta(t*) = alpha at the takeoff event t* (which enforces L(t*) = 1).
/// The residual theta(t*) - alpha must change sign over the bracket.
pub fn solve_k_star(
    x_dot: f64,
    y_dot: f64,
    alpha: f64,
    bracket: (f64, f64),
    params: &ModelParams,
) -> Result<ShootingResult> {
    let td = touchdown_polar_from_cartesian(x_dot, y_dot, alpha)?;
    let residual = |k: f64| -> f64 {
        let p = ModelParams {
            stiffness: k,
            epsilon: 1.0 / k.sqrt(),
            ..*params
        };
        match integrate_stance(&td, &p) {
            Ok(traj) => traj.takeoff.theta - alpha,
            Err(_) => f64::NAN,
        }
    };
    let k_star = bracketed_root(residual, bracket.0, bracket.1, 1e-9 * bracket.1)?;
    let p = ModelParams {
        stiffness: k_star,
        epsilon: 1.0 / k_star.sqrt(),
        ..*params
    };
    let traj = integrate_stance(&td, &p)?;
    let res = traj.takeoff.theta - alpha;
    if res.abs() > params.tolerances.root_finding {
        return Err(Error::NoConvergence);
    }
    Ok(ShootingResult {
        k_star,
        t_star: traj.takeoff.t,
        residual: res,
    })
}

/// Default shooting bracket [K/2, 2K] around the quadratic approximation.
pub fn default_k_bracket(x_dot: f64, y_dot: f64, alpha: f64) -> Result<(f64, f64)> {
    let td = touchdown_polar_from_cartesian(x_dot, y_dot, alpha)?;
    let k = stiffness_symmetric(&td, alpha)?.k;
    Ok((0.5 * k, 2.0 * k))
}

/// Raw next apex height of the hybrid step: touchdown geometry, stance
/// integration, takeoff conversion, ballistic flight. No stumble check, so
/// the value is comparable with the analytic map even below landing height.
pub fn full_apex_height(apex: &ApexState, alpha: f64, params: &ModelParams) -> Result<f64> {
    let e_s = apex.energy;
    let ca = alpha.cos();
    if apex.y < ca || apex.y > e_s {
        return Err(Error::OutOfDomain {
            value: apex.y,
            lo: ca,
            hi: e_s,
        });
    }
    let x_dot = (2.0 * (e_s - apex.y)).sqrt();
    let y_dot_mag = (2.0 * (apex.y - ca)).sqrt();
    let td = touchdown_polar_from_cartesian(x_dot, y_dot_mag, alpha)?;
    let traj = integrate_stance(&td, params)?;
    let (x_to, y_to, yp_to) = cartesian_from_polar_takeoff(&traj.takeoff);
    Ok(flight_step(x_to, y_to, yp_to).apex.y)
}

/// Full hybrid apex-to-apex step: `full_apex_height` plus the stumble check
/// and the energy-restoring velocity. The numerical counterpart of the
/// analytic return map.
pub fn full_apex_map(apex: &ApexState, alpha: f64, params: &ModelParams) -> Result<ApexState> {
    let e_s = apex.energy;
    let y_next = full_apex_height(apex, alpha, params)?;
    if y_next < alpha.cos() {
        return Err(Error::Stumble { height: y_next });
    }
    // restore conservation: stance preserves E_s, so E_s - Y_next >= 0
    let x_corrected = (2.0 * (e_s - y_next)).sqrt();
    Ok(ApexState {
        y: y_next,
        x_dot: x_corrected,
        energy: e_s,
    })
}

/// Energy drift along a trajectory: max |E(t) - E(0)|.
pub fn energy_drift(traj: &Trajectory, params: &ModelParams) -> f64 {
    let e0 = stance_energy(&traj.samples[0], params);
    let mut drift: f64 = 0.0;
    for s in &traj.samples {
        drift = drift.max((stance_energy(s, params) - e0).abs());
    }
    drift
}
