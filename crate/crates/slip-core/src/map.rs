//! The analytic one-dimensional apex return map Y_{i+1} = f(Y_i): touchdown
//! reconstruction from apex height, the map itself, the energy-restoring
//! horizontal velocity, and orbit iteration with stumble detection.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{ModelParams, TouchdownState};
use crate::stance::{sweep_angle_variant, SweepVariant};

/// Parameters of the return map. The sweep variant defaults to the closed-form
/// expression; the stability algebra uses the Taylor form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConfig {
    pub alpha: f64,
    pub energy: f64,
    pub stiffness: f64,
    pub sweep_variant: SweepVariant,
    /// Absolute tolerance on |Y_{i+1} - Y_i| declaring an orbit converged.
    pub convergence_tol: f64,
}

impl MapConfig {
    pub fn new(alpha: f64, energy: f64, stiffness: f64) -> Result<Self> {
        if energy <= alpha.cos() {
            return Err(Error::InvalidParameter("energy must exceed cos(alpha)"));
        }
        ModelParams::new(alpha, stiffness)?;
        Ok(MapConfig {
            alpha,
            energy,
            stiffness,
            sweep_variant: SweepVariant::Full,
            convergence_tol: 1e-10,
        })
    }

    pub fn with_variant(mut self, variant: SweepVariant) -> Self {
        self.sweep_variant = variant;
        self
    }

    pub(crate) fn params(&self) -> ModelParams {
        ModelParams::new(self.alpha, self.stiffness)
            .expect("validated at construction")
            .with_energy(self.energy)
    }

    /// Map domain [cos(alpha), E_s].
    pub fn domain(&self) -> (f64, f64) {
        (self.alpha.cos(), self.energy)
    }
}

/// How an orbit ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Terminal {
    /// |Y_{i+1} - Y_i| dropped below the tolerance.
    Converged {
        steps: usize,
    },
    MaxIterations,
    /// Next apex below landing height: leg would penetrate the ground.
    Stumbled,
    /// Orbit left the forward-running domain: apex above the system energy,
    /// or the next touchdown would not move forward.
    Escaped,
}

/// Orbit of the return map: visited heights, energy-corrected horizontal
/// velocities, and the terminal status.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult {
    pub heights: Vec<f64>,
    pub x_dots: Vec<f64>,
    pub terminal: Terminal,
}

/// Touchdown velocities as functions of apex height (domain cos(alpha) <= Y <= E_s):
/// theta_d = sqrt(2)[cos(a) sqrt(E-Y) - sin(a) sqrt(Y-cos a)],
/// L_d     = sqrt(2)[sin(a) sqrt(E-Y) + cos(a) sqrt(Y-cos a)].
pub fn td_velocities_from_apex(y: f64, cfg: &MapConfig) -> Result<TouchdownState> {
    let (lo, hi) = cfg.domain();
    if !(y >= lo && y <= hi) {
        return Err(Error::OutOfDomain { value: y, lo, hi });
    }
    let u = (cfg.energy - y).sqrt();
    let v = (y - lo).sqrt();
    let (sa, ca) = cfg.alpha.sin_cos();
    let sqrt2 = core::f64::consts::SQRT_2;
    let theta_d = sqrt2 * (ca * u - sa * v);
    let l_d = sqrt2 * (sa * u + ca * v);
    TouchdownState::new(theta_d, l_d, cfg.alpha)
}

/// One apex-to-apex step:
/// Y_{i+1} = cos(a - dth) + [sin(2a - dth) sqrt(E-Y) + cos(2a - dth) sqrt(Y - cos a)]^2
/// with dth the configured sweep variant at the reconstructed touchdown state.
///
/// Errors with `Stumble` when Y_{i+1} < cos(alpha).
pub fn apex_return(y: f64, cfg: &MapConfig) -> Result<f64> {
    let td = td_velocities_from_apex(y, cfg)?;
    let params = cfg.params();
    let dth = sweep_angle_variant(&td, &params, cfg.sweep_variant)?;
    let u = (cfg.energy - y).sqrt();
    let v = (y - cfg.alpha.cos()).sqrt();
    let w = 2.0 * cfg.alpha - dth;
    let bracket = w.sin() * u + w.cos() * v;
    let y_next = (cfg.alpha - dth).cos() + bracket * bracket;
    if y_next < cfg.alpha.cos() {
        return Err(Error::Stumble { height: y_next });
    }
    Ok(y_next)
}

/// Energy-restoring horizontal velocity X'_{i+1} = sqrt(2 (E_s - Y_{i+1})).
pub fn corrected_x_dot(y_next: f64, cfg: &MapConfig) -> Result<f64> {
    if y_next > cfg.energy {
        return Err(Error::OutOfDomain {
            value: y_next,
            lo: cfg.alpha.cos(),
            hi: cfg.energy,
        });
    }
    Ok((2.0 * (cfg.energy - y_next)).sqrt())
}

/// Iterates the map from `y0`, recording heights and corrected velocities.
/// Stumbles and upward domain exits are terminal statuses, not errors.
pub fn iterate(y0: f64, cfg: &MapConfig, max_steps: usize) -> Result<OrbitResult> {
    let mut heights = Vec::with_capacity(max_steps + 1);
    let mut x_dots = Vec::with_capacity(max_steps + 1);
    heights.push(y0);
    x_dots.push(corrected_x_dot(y0, cfg)?);
    let mut y = y0;
    for step in 0..max_steps {
        let y_next = match apex_return(y, cfg) {
            Ok(v) => v,
            Err(Error::Stumble { height }) => {
                heights.push(height);
                return Ok(OrbitResult {
                    heights,
                    x_dots,
                    terminal: Terminal::Stumbled,
                });
            }
            Err(Error::NonForward { .. }) => {
                return Ok(OrbitResult {
                    heights,
                    x_dots,
                    terminal: Terminal::Escaped,
                });
            }
            Err(e) => return Err(e),
        };
        if y_next > cfg.energy {
            heights.push(y_next);
            return Ok(OrbitResult {
                heights,
                x_dots,
                terminal: Terminal::Escaped,
            });
        }
        heights.push(y_next);
        x_dots.push(corrected_x_dot(y_next, cfg)?);
        if (y_next - y).abs() < cfg.convergence_tol {
            return Ok(OrbitResult {
                heights,
                x_dots,
                terminal: Terminal::Converged { steps: step },
            });
        }
        y = y_next;
    }
    Ok(OrbitResult {
        heights,
        x_dots,
        terminal: Terminal::MaxIterations,
    })
}
