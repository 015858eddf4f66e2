//! Error type shared by all model operations.

use core::fmt;

/// Errors raised by model construction, closed-form evaluation, and the
/// numerical routines (integration, shooting, continuation).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor precondition failed (angle range, positivity, ...).
    InvalidParameter(&'static str),
    /// Touchdown angular velocity came out non-positive: no forward locomotion.
    NonForward { theta_d: f64 },
    /// Energy too low for the requested touchdown state (negative radicand).
    InfeasibleEnergy { radicand: f64 },
    /// Zero landing speed at the oscillation center: C = A/B undefined.
    DegenerateContact,
    /// Stance-phase time outside [0, t_C].
    TimeOutOfRange { t: f64, t_contact: f64 },
    /// L_d = 0 where it appears in a denominator (Taylor sweep, stiffness quadratic).
    SingularLandingSpeed,
    /// The stiffness quadratic has no real root.
    NoPhysicalRoot { discriminant: f64 },
    /// Scalar argument outside its contract interval.
    OutOfDomain { value: f64, lo: f64, hi: f64 },
    /// Next apex below landing height: the leg would penetrate the ground.
    Stumble { height: f64 },
    /// Theorem 1 existence condition violated.
    ExistenceViolated,
    /// Leg length reached zero during stance integration.
    LegCollapse { t: f64 },
    /// No takeoff event before t_max.
    NoTakeoff { t_max: f64 },
    /// Root bracket endpoints do not straddle a sign change.
    NoBracket { lo: f64, hi: f64 },
    /// Root solver exhausted its iteration budget.
    NoConvergence,
    /// Branches never approach within the collision tolerance.
    NoCollision,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::NonForward { theta_d } => {
                write!(
                    f,
                    "touchdown angular velocity {theta_d} <= 0: no forward locomotion"
                )
            }
            Error::InfeasibleEnergy { radicand } => {
                write!(f, "infeasible energy: radicand {radicand} < 0")
            }
            Error::DegenerateContact => {
                write!(f, "degenerate contact: oscillation amplitude B = 0")
            }
            Error::TimeOutOfRange { t, t_contact } => {
                write!(f, "time {t} outside stance interval [0, {t_contact}]")
            }
            Error::SingularLandingSpeed => write!(f, "landing speed L_d = 0 in a denominator"),
            Error::NoPhysicalRoot { discriminant } => {
                write!(
                    f,
                    "stiffness quadratic has no real root (discriminant {discriminant})"
                )
            }
            Error::OutOfDomain { value, lo, hi } => {
                write!(f, "value {value} outside domain [{lo}, {hi}]")
            }
            Error::Stumble { height } => {
                write!(f, "stumble: next apex {height} below landing height")
            }
            Error::ExistenceViolated => write!(f, "fixed-point existence condition violated"),
            Error::LegCollapse { t } => write!(f, "leg collapsed (L <= 0) at t = {t}"),
            Error::NoTakeoff { t_max } => write!(f, "no takeoff event before t = {t_max}"),
            Error::NoBracket { lo, hi } => {
                write!(f, "no sign change over bracket [{lo}, {hi}]")
            }
            Error::NoConvergence => write!(f, "root solver did not converge"),
            Error::NoCollision => write!(f, "branches never collide within tolerance"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
