//! Dimensionless state representations and the coordinate/energy conversions
//! shared by every other module.
//!
//! Conventions: the touchdown leg angle is stored as the (positive) angle of
//! attack `alpha` with theta_TD = -alpha; leg rest length is 1; velocities are
//! Froude numbers (speed / sqrt(g * l0)).

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Numeric tolerances used across the crate.
///
/// All formulas are smooth and O(1)-scaled, so the defaults are tight:
/// 1e-10 absolute for algebraic identities, 1e-8 for root-finding residuals,
/// 1e-10 relative/absolute for the reference integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub algebraic: f64,
    pub root_finding: f64,
    pub integrator_rel: f64,
    pub integrator_abs: f64,
    /// Takeoff-event time localization.
    pub event: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            algebraic: 1e-10,
            root_finding: 1e-8,
            integrator_rel: 1e-10,
            integrator_abs: 1e-10,
            event: 1e-12,
        }
    }
}

/// Model parameters: angle of attack, spring stiffness, optional system energy.
///
/// `epsilon = 1 / sqrt(K)` is kept alongside `stiffness` and is exact by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub stiffness: f64,
    pub epsilon: f64,
    pub energy: Option<f64>,
    pub tolerances: Tolerances,
}

impl ModelParams {
    /// Requires 0 < alpha < pi/2 and K > 0.
    pub fn new(alpha: f64, stiffness: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < core::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidParameter("alpha must lie in (0, pi/2)"));
        }
        if !(stiffness > 0.0 && stiffness.is_finite()) {
            return Err(Error::InvalidParameter("stiffness must be positive"));
        }
        Ok(ModelParams {
            alpha,
            stiffness,
            epsilon: 1.0 / stiffness.sqrt(),
            energy: None,
            tolerances: Tolerances::default(),
        })
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = Some(energy);
        self
    }
}

/// Stance-phase phase point in polar coordinates (L, theta) plus time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StanceState {
    pub t: f64,
    pub l: f64,
    pub l_dot: f64,
    pub theta: f64,
    pub theta_dot: f64,
}

impl StanceState {
    /// Nondimensional angular momentum P = L^2 theta'.
    pub fn angular_momentum(&self) -> f64 {
        self.l * self.l * self.theta_dot
    }
}

/// Flight apex: height Y, horizontal Froude number X', system energy.
///
/// Invariant: X' = sqrt(2 (E_s - Y)) — at apex the vertical velocity is zero,
/// so the whole kinetic energy is horizontal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApexState {
    pub y: f64,
    pub x_dot: f64,
    pub energy: f64,
}

impl ApexState {
    /// Builds the apex state at height `y` for system energy `energy`,
    /// with X' fixed by the energy split.
    pub fn from_height(y: f64, energy: f64) -> Result<Self> {
        if y > energy {
            return Err(Error::OutOfDomain {
                value: y,
                lo: f64::NEG_INFINITY,
                hi: energy,
            });
        }
        Ok(ApexState {
            y,
            x_dot: (2.0 * (energy - y)).sqrt(),
            energy,
        })
    }
}

/// Touchdown velocities: theta'_TD = theta_d > 0 and L_d = |L'_TD| >= 0, plus
/// the landing angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TouchdownState {
    pub theta_d: f64,
    pub l_d: f64,
    pub alpha: f64,
}

impl TouchdownState {
    pub fn new(theta_d: f64, l_d: f64, alpha: f64) -> Result<Self> {
        if theta_d <= 0.0 {
            return Err(Error::NonForward { theta_d });
        }
        if l_d < 0.0 {
            return Err(Error::InvalidParameter(
                "landing speed must be non-negative",
            ));
        }
        Ok(TouchdownState {
            theta_d,
            l_d,
            alpha,
        })
    }

    /// Initial stance state per the touchdown conditions:
    /// (L, L', theta, theta') = (1, -L_d, -alpha, theta_d).
    pub fn initial_stance_state(&self) -> StanceState {
        StanceState {
            t: 0.0,
            l: 1.0,
            l_dot: -self.l_d,
            theta: -self.alpha,
            theta_dot: self.theta_d,
        }
    }

    /// System energy implied by the touchdown state,
    /// E_s = (theta_d^2 + L_d^2)/2 + cos(alpha).
    pub fn energy(&self) -> f64 {
        0.5 * (self.theta_d * self.theta_d + self.l_d * self.l_d) + self.alpha.cos()
    }
}

/// Dimensionless mechanical energy during contact:
/// E_s = 1/2 [ (L')^2 + L^2 (theta')^2 + K (1-L)^2 ] + L cos(theta).
pub fn stance_energy(state: &StanceState, params: &ModelParams) -> f64 {
    let k = params.stiffness;
    let c = 1.0 - state.l;
    0.5 * (state.l_dot * state.l_dot
        + state.l * state.l * state.theta_dot * state.theta_dot
        + k * c * c)
        + state.l * state.theta.cos()
}

/// Small-angle form of the stance energy: cos(theta) replaced by 1.
pub fn small_angle_energy(state: &StanceState, params: &ModelParams) -> f64 {
    let k = params.stiffness;
    let c = 1.0 - state.l;
    0.5 * (state.l_dot * state.l_dot
        + state.l * state.l * state.theta_dot * state.theta_dot
        + k * c * c)
        + state.l
}

/// Rotates Cartesian touchdown velocities into polar ones:
/// theta_d = X' cos(alpha) - Y' sin(alpha), L_d = X' sin(alpha) + Y' cos(alpha).
///
/// `y_dot` is the landing speed magnitude (the paper's Y' at touchdown is
/// negative; this takes |Y'| so L_d comes out positive). Rejects theta_d <= 0.
pub fn touchdown_polar_from_cartesian(
    x_dot: f64,
    y_dot: f64,
    alpha: f64,
) -> Result<TouchdownState> {
    let (sa, ca) = alpha.sin_cos();
    let theta_d = x_dot * ca - y_dot * sa;
    let l_d = x_dot * sa + y_dot * ca;
    TouchdownState::new(theta_d, l_d, alpha)
}

/// Converts a takeoff state (L = 1) back to Cartesian:
/// X' = L' sin(theta) + theta' cos(theta), Y = cos(theta),
/// Y' = L' cos(theta) - theta' sin(theta).
pub fn cartesian_from_polar_takeoff(state: &StanceState) -> (f64, f64, f64) {
    let (st, ct) = state.theta.sin_cos();
    let x_dot = state.l_dot * st + state.theta_dot * ct;
    let y = ct;
    let y_dot = state.l_dot * ct - state.theta_dot * st;
    (x_dot, y, y_dot)
}

/// Landing speed from the energy balance, L_d = sqrt(2 E_s - theta_d^2 - 2 cos(alpha)).
pub fn radial_speed_from_energy(energy: f64, theta_d: f64, alpha: f64) -> Result<f64> {
    let radicand = 2.0 * energy - theta_d * theta_d - 2.0 * alpha.cos();
    if radicand < 0.0 {
        return Err(Error::InfeasibleEnergy { radicand });
    }
    Ok(radicand.sqrt())
}
