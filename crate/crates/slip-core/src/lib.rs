//! Numerical laboratory for the spring-loaded inverted pendulum (SLIP)
//! running model: closed-form stance asymptotics for large spring stiffness,
//! the one-dimensional apex-to-apex return map, analytic fixed-point
//! existence and stability machinery, a full-ODE reference oracle, and
//! continuation-based bifurcation detection.
//!
//! Everything is dimensionless: lengths by the rest leg length, velocities by
//! sqrt(g l0) (Froude numbers), energies by m g l0. The crate is
//! `no_std`-compatible (with `alloc`); disable the default `std` feature for
//! embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

pub mod continuation;
pub mod error;
pub mod map;
pub mod model;
pub mod ode;
pub mod solve;
pub mod stability;
pub mod stance;
pub mod stiffness;

pub use continuation::{
    continue_branch, detect_transcritical, find_fixed_points, find_fixed_points_with_resolution,
    BifurcationEvent, BifurcationKind, Branch, BranchPair, BranchPoint, FixedPoint, KRule,
};
pub use error::{Error, Result};
pub use map::{
    apex_return, corrected_x_dot, iterate, td_velocities_from_apex, MapConfig, OrbitResult,
    Terminal,
};
pub use model::{
    cartesian_from_polar_takeoff, radial_speed_from_energy, small_angle_energy, stance_energy,
    touchdown_polar_from_cartesian, ApexState, ModelParams, StanceState, Tolerances,
    TouchdownState,
};
pub use ode::{
    default_k_bracket, energy_drift, flight_step, full_apex_height, full_apex_map,
    integrate_stance, solve_k_star, FlightStep, IntegratorStats, ShootingResult, Trajectory,
};
pub use stability::{
    energy_min_special, energy_region, energy_upper_special, fixed_point_height, map_derivative,
    min_energy, special_case_derivative, stability_check, stiffness_region, velocity_region,
    FixedPointRecord, RegionMode, RegionPoint, StabilityRegion, VelocitySweep,
};
pub use stance::{
    angular_motion, radial_motion, stance_coefficients, stance_summary, sweep_angle,
    sweep_angle_taylor, StanceCoefficients, StanceSummary, SweepVariant,
};
pub use stiffness::{
    stiffness_leading, stiffness_minimum, stiffness_symmetric, StiffnessEstimate, StiffnessMethod,
};

#[allow(unused_imports)]
use num_traits::Float;

/// Maximum leg compression B - A as tabulated in the published parameter
/// table: evaluated at K = K^min with the landing speed taken as
/// sqrt(theta_d* tan(alpha)) — the convention the table's own numbers follow
/// (the minimum-energy landing speed theta_d* tan(alpha) does not reproduce
/// them).
pub fn table_delta_l_max(theta_d_star: f64, alpha: f64, k_min: f64) -> f64 {
    let eps2 = 1.0 / k_min;
    let shift = theta_d_star * theta_d_star - alpha.cos();
    let l_d2 = theta_d_star * alpha.tan();
    let a = eps2 * shift;
    let b = eps2.sqrt() * (eps2 * shift * shift + l_d2).sqrt();
    b - a
}
