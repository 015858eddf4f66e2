//! Numerical continuation of return-map fixed points in the system energy,
//! branch stability classification, and transcritical-bifurcation detection.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::map::{apex_return, MapConfig};
use crate::model::TouchdownState;
use crate::stance::SweepVariant;
use crate::stiffness::stiffness_symmetric;

/// Stiffness rule K(E_s) fed to the map along a continuation sweep.
///
/// The default ties K to the symmetric-stance quadratic at a fixed touchdown
/// angular velocity theta_d* = 1 (the X' ~ 1 jogging case), which reproduces
/// the published bifurcation diagram; the special case uses
/// theta_d* = sqrt(cos alpha) instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KRule {
    FixedThetaD(f64),
    SpecialCase,
    Constant(f64),
}

impl Default for KRule {
    fn default() -> Self {
        KRule::FixedThetaD(1.0)
    }
}

impl KRule {
    pub fn k_at(&self, alpha: f64, energy: f64) -> Result<f64> {
        let theta = match self {
            KRule::FixedThetaD(t) => *t,
            KRule::SpecialCase => alpha.cos().sqrt(),
            KRule::Constant(k) => return Ok(*k),
        };
        let l2 = 2.0 * energy - theta * theta - 2.0 * alpha.cos();
        if l2 <= 0.0 {
            return Err(Error::InfeasibleEnergy { radicand: l2 });
        }
        let td = TouchdownState::new(theta, l2.sqrt(), alpha)?;
        Ok(stiffness_symmetric(&td, alpha)?.k)
    }
}

/// One continuation sample: a fixed point with its finite-difference
/// derivative, stability flag, and the stiffness used at that energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub e_s: f64,
    pub y_star: f64,
    pub f_prime: f64,
    pub stable: bool,
    pub k_used: f64,
}

/// An ordered fixed-point branch; `lost_at` records the energy where tracking
/// failed, if it did.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Branch {
    pub points: Vec<BranchPoint>,
    pub lost_at: Option<f64>,
}

/// The two tracked branches, ordered by starting height. Through a
/// transcritical bifurcation the branch identities cross in height.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchPair {
    pub lower: Branch,
    pub upper: Branch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BifurcationKind {
    Transcritical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationEvent {
    pub kind: BifurcationKind,
    pub e_s_star: f64,
    pub y_star: f64,
}

/// A fixed point of the return map with a finite-difference derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub y: f64,
    pub f_prime: f64,
}

fn map_gap(y: f64, cfg: &MapConfig) -> Option<f64> {
    apex_return(y, cfg).ok().map(|fy| fy - y)
}

fn fd_derivative(y: f64, cfg: &MapConfig) -> f64 {
    let h = 1e-7;
    match (apex_return(y + h, cfg), apex_return(y - h, cfg)) {
        (Ok(fp), Ok(fm)) => (fp - fm) / (2.0 * h),
        _ => f64::NAN,
    }
}

fn refine_root(mut lo: f64, mut hi: f64, mut g_lo: f64, cfg: &MapConfig) -> f64 {
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-10 {
            return mid;
        }
        match map_gap(mid, cfg) {
            Some(g) if g.signum() == g_lo.signum() => {
                lo = mid;
                g_lo = g;
            }
            Some(_) => hi = mid,
            None => hi = mid,
        }
    }
    0.5 * (lo + hi)
}

/// All roots of f(Y) - Y on [cos(alpha) + delta, E_s - delta], located by a
/// sign scan at the given resolution and refined to 1e-10 by bisection. Grid
/// points where the map is undefined (non-forward touchdown, stumble) are
/// skipped. An empty list is a valid outcome.
pub fn find_fixed_points_with_resolution(cfg: &MapConfig, resolution: f64) -> Vec<FixedPoint> {
    let (lo, hi) = cfg.domain();
    let (lo, hi) = (lo + 1e-9, hi - 1e-9);
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    let n = ((hi - lo) / resolution).ceil() as usize;
    for i in 0..=n {
        let y = lo + (hi - lo) * i as f64 / n as f64;
        let Some(g) = map_gap(y, cfg) else {
            prev = None;
            continue;
        };
        if let Some((py, pg)) = prev {
            if pg == 0.0 {
                roots.push(py);
            } else if pg.signum() != g.signum() {
                roots.push(refine_root(py, y, pg, cfg));
            }
        }
        prev = Some((y, g));
    }
    roots
        .into_iter()
        .map(|y| FixedPoint {
            y,
            f_prime: fd_derivative(y, cfg),
        })
        .collect()
}

/// `find_fixed_points_with_resolution` at the default grid resolution 1e-3.
pub fn find_fixed_points(cfg: &MapConfig) -> Vec<FixedPoint> {
    find_fixed_points_with_resolution(cfg, 1e-3)
}

fn config_at(alpha: f64, energy: f64, k_rule: &KRule, variant: SweepVariant) -> Result<MapConfig> {
    Ok(MapConfig::new(alpha, energy, k_rule.k_at(alpha, energy)?)?.with_variant(variant))
}

/// Locates the root nearest `target` by scanning a local window and bisecting.
/// The scan escalates in resolution so that root pairs much closer than the
/// window (as happens just before a branch collision) are still separated.
fn root_near(target: f64, window: f64, cfg: &MapConfig) -> Option<f64> {
    let (dom_lo, dom_hi) = cfg.domain();
    let lo = (target - window).max(dom_lo + 1e-9);
    let hi = (target + window).min(dom_hi - 1e-9);
    for n in [60usize, 600, 6000] {
        let mut best: Option<f64> = None;
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=n {
            let y = lo + (hi - lo) * i as f64 / n as f64;
            let Some(g) = map_gap(y, cfg) else {
                prev = None;
                continue;
            };
            if let Some((py, pg)) = prev {
                if pg.signum() != g.signum() {
                    let r = refine_root(py, y, pg, cfg);
                    if best.is_none_or(|b| (r - target).abs() < (b - target).abs()) {
                        best = Some(r);
                    }
                }
            }
            prev = Some((y, g));
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Continues the two lowest fixed points of the map over `e_range` with step
/// `step`, following each root by warm-started local bisection (linear
/// prediction from the previous two samples carries each branch identity
/// through a crossing). Branch loss is recorded, not raised.
///
/// Uses the Taylor sweep variant: the published bifurcation structure lives in
/// the Taylor map, whose fixed points the symmetric-stiffness quadratic pins.
pub fn continue_branch(
    alpha: f64,
    e_range: (f64, f64),
    step: f64,
    k_rule: KRule,
) -> Result<BranchPair> {
    if step <= 0.0 || e_range.1 <= e_range.0 {
        return Err(Error::InvalidParameter(
            "energy range must be increasing with step > 0",
        ));
    }
    let variant = SweepVariant::Taylor;
    let cfg0 = config_at(alpha, e_range.0, &k_rule, variant)?;
    let mut roots0 = find_fixed_points_with_resolution(&cfg0, 2e-4);
    roots0.truncate(2);
    if roots0.len() < 2 {
        return Err(Error::NoBracket {
            lo: cfg0.domain().0,
            hi: cfg0.domain().1,
        });
    }

    let mut branches = [Branch::default(), Branch::default()];
    let mut trail: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
    for (i, fp) in roots0.iter().enumerate() {
        branches[i].points.push(BranchPoint {
            e_s: e_range.0,
            y_star: fp.y,
            f_prime: fp.f_prime,
            stable: fp.f_prime.abs() < 1.0,
            k_used: cfg0.stiffness,
        });
        trail[i].push(fp.y);
    }

    let mut e = e_range.0 + step;
    while e <= e_range.1 + 1e-12 {
        let cfg = config_at(alpha, e, &k_rule, variant)?;
        for i in 0..2 {
            if branches[i].lost_at.is_some() {
                continue;
            }
            let n = trail[i].len();
            let predicted = if n >= 2 {
                2.0 * trail[i][n - 1] - trail[i][n - 2]
            } else {
                trail[i][n - 1]
            };
            // first step knows no motion yet and needs a generous window
            let window = if n >= 2 {
                (4.0 * (trail[i][n - 1] - trail[i][n - 2]).abs()).max(1e-3)
            } else {
                8e-3
            };
            match root_near(predicted, window, &cfg) {
                Some(y) => {
                    let fp = fd_derivative(y, &cfg);
                    branches[i].points.push(BranchPoint {
                        e_s: e,
                        y_star: y,
                        f_prime: fp,
                        stable: fp.abs() < 1.0,
                        k_used: cfg.stiffness,
                    });
                    trail[i].push(y);
                }
                None => branches[i].lost_at = Some(e),
            }
        }
        e += step;
    }
    let [a, b] = branches;
    Ok(BranchPair { lower: a, upper: b })
}

/// Detects the transcritical collision of a tracked branch pair: the energy
/// where the (identity-tracked) signed branch separation crosses zero. The
/// event is located by interpolating the stored samples — the separation is
/// linear through the crossing, so no re-solving is needed (and none is
/// possible numerically: at the tangency the two roots are indistinguishable).
/// Verifies f' = 1 within 1e-3 at the event and the stability exchange.
pub fn detect_transcritical(
    pair: &BranchPair,
    _alpha: f64,
    _k_rule: KRule,
) -> Result<BifurcationEvent> {
    let pts_a = &pair.lower.points;
    let pts_b = &pair.upper.points;
    let n = pts_a.len().min(pts_b.len());
    if n < 2 {
        return Err(Error::NoCollision);
    }
    let sep = |i: usize| pts_a[i].y_star - pts_b[i].y_star;
    // the sampled separation must both dip below the declaration tolerance
    // (it passes through zero) and change sign
    let mut cross: Option<usize> = None;
    let mut min_sep = f64::INFINITY;
    for i in 1..n {
        min_sep = min_sep.min(sep(i).abs()).min(sep(i - 1).abs());
        if sep(i - 1).signum() != sep(i).signum() && cross.is_none() {
            cross = Some(i);
        }
    }
    let Some(i) = cross else {
        return Err(Error::NoCollision);
    };
    let (s0, s1) = (sep(i - 1), sep(i));
    let (e0, e1) = (pts_a[i - 1].e_s, pts_a[i].e_s);
    let w = s0 / (s0 - s1);
    let e_star = e0 + w * (e1 - e0);
    let y_star = pts_a[i - 1].y_star + w * (pts_a[i].y_star - pts_a[i - 1].y_star);
    if min_sep > 1e-4 {
        // branches cross on the grid but were never resolved close to the
        // tangency; with any sensible step this does not happen
        return Err(Error::NoCollision);
    }
    // tangency: the interpolated derivative of each branch passes through 1
    let fp_at =
        |pts: &[BranchPoint]| pts[i - 1].f_prime + w * (pts[i].f_prime - pts[i - 1].f_prime);
    let fp = 0.5 * (fp_at(pts_a) + fp_at(pts_b));
    if (fp - 1.0).abs() > 1e-3 {
        return Err(Error::NoCollision);
    }
    // stability exchange: each branch flips its side of f' = 1 across the
    // event, in opposite directions
    let flank = |pts: &[BranchPoint]| -> Option<(f64, f64)> {
        let before = pts.iter().rev().find(|p| p.e_s < e_star - 1e-4)?;
        let after = pts.iter().find(|p| p.e_s > e_star + 1e-4)?;
        Some((before.f_prime - 1.0, after.f_prime - 1.0))
    };
    if let (Some((a0, a1)), Some((b0, b1))) = (flank(pts_a), flank(pts_b)) {
        if a0.signum() == a1.signum() || b0.signum() == b1.signum() || a0.signum() == b0.signum() {
            return Err(Error::NoCollision);
        }
    }
    Ok(BifurcationEvent {
        kind: BifurcationKind::Transcritical,
        e_s_star: e_star,
        y_star,
    })
}
