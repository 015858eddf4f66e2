//! One function per published figure/table: each returns named data tables
//! ready for CSV/JSON emission.

use crate::output::DataTable;
use anyhow::{anyhow, Result};
use slip_core::*;
use std::f64::consts::PI;

fn base_meta(t: &mut DataTable) {
    t.meta("tool", concat!("sliplab ", env!("CARGO_PKG_VERSION")));
    t.meta("tolerance_algebraic", "1e-10");
    t.meta("tolerance_root_finding", "1e-8");
    t.meta("tolerance_integrator", "1e-10");
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Fig 2: asymptotic stance trajectories at alpha=0.1, X'=1, Y'=0.1, K=15.
pub fn fig2() -> Result<Vec<(String, DataTable)>> {
    let alpha = 0.1;
    let td = touchdown_polar_from_cartesian(1.0, 0.1, alpha)?;
    let params = ModelParams::new(alpha, 15.0)?;
    let co = stance_coefficients(&td, &params)?;
    let sweep = sweep_angle(&td, &params)?;

    let summarize = |t: &mut DataTable| {
        base_meta(t);
        t.meta("alpha", alpha)
            .meta("x_vel", 1.0)
            .meta("y_vel", 0.1)
            .meta("stiffness", 15.0);
        t.meta_num("center_shift_a", co.center_shift);
        t.meta_num("amplitude_b", co.amplitude);
        t.meta_num("delta_l_max", co.delta_l_max);
        t.meta_num("t_contact", co.t_contact);
        t.meta_num("theta_takeoff", sweep - alpha);
        t.meta_num("delta_theta", sweep);
    };

    let mut radial = DataTable::new(&["t", "l"]);
    summarize(&mut radial);
    let mut angular = DataTable::new(&["t", "theta"]);
    summarize(&mut angular);
    for t in linspace(0.0, co.t_contact, 401) {
        radial.push(vec![t, radial_motion(t, &td, &params)?]);
        angular.push(vec![t, angular_motion(t, &td, &params)?]);
    }
    Ok(vec![
        ("fig2_radial".into(), radial),
        ("fig2_angular".into(), angular),
    ])
}

/// Fig 3: shooting stiffness K* against both closed-form approximations.
pub fn fig3() -> Result<Vec<(String, DataTable)>> {
    let mut t = DataTable::new(&[
        "alpha",
        "k_star",
        "k_quadratic",
        "k_tilde",
        "ratio_quadratic",
        "ratio_tilde",
    ]);
    base_meta(&mut t);
    t.meta("x_vel", 1.0).meta("y_vel", 0.1);
    let params = ModelParams::new(0.1, 1.0)?;
    for &a in &[
        0.01, 0.02, 0.03, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35,
    ] {
        let td = touchdown_polar_from_cartesian(1.0, 0.1, a)?;
        let kq = stiffness_symmetric(&td, a)?.k;
        let kt = stiffness_leading(td.theta_d, a).k;
        let sol = solve_k_star(1.0, 0.1, a, default_k_bracket(1.0, 0.1, a)?, &params)?;
        t.push(vec![
            a,
            sol.k_star,
            kq,
            kt,
            sol.k_star / kq,
            sol.k_star / kt,
        ]);
    }
    Ok(vec![("fig3_kstar".into(), t)])
}

/// Fig 4: special-case stability regions E_s(alpha) and K(alpha, E_s).
pub fn fig4() -> Result<Vec<(String, DataTable)>> {
    let alphas = linspace(PI / 36.0, PI / 6.0, 41);
    let er = energy_region(&alphas, RegionMode::SpecialCase);
    let kr = stiffness_region(&alphas, RegionMode::SpecialCase);
    let mut te = DataTable::new(&["alpha", "e_minus", "e_min", "e_plus"]);
    base_meta(&mut te);
    te.meta("theta_d_star", "sqrt(cos alpha)");
    for p in &er.points {
        te.push(vec![
            p.param,
            p.lower.unwrap_or(f64::NAN),
            p.min_existence.unwrap_or(f64::NAN),
            p.upper.unwrap_or(f64::NAN),
        ]);
    }
    let mut tk = DataTable::new(&["alpha", "k_minus", "k_min", "k_plus"]);
    base_meta(&mut tk);
    tk.meta("theta_d_star", "sqrt(cos alpha)");
    for p in &kr.points {
        tk.push(vec![
            p.param,
            p.lower.unwrap_or(f64::NAN),
            p.min_existence.unwrap_or(f64::NAN),
            p.upper.unwrap_or(f64::NAN),
        ]);
    }
    Ok(vec![
        ("fig4_energy_region".into(), te),
        ("fig4_stiffness_region".into(), tk),
    ])
}

/// Fig 5: return-map graph and a converging orbit at alpha=pi/9, E=1.48.
pub fn fig5() -> Result<Vec<(String, DataTable)>> {
    let alpha = PI / 9.0;
    let energy = 1.48;
    let theta_star = alpha.cos().sqrt();
    let l_star = radial_speed_from_energy(energy, theta_star, alpha)?;
    let td = TouchdownState::new(theta_star, l_star, alpha)?;
    let k = stiffness_symmetric(&td, alpha)?.k;
    let cfg_full = MapConfig::new(alpha, energy, k)?;
    let cfg_taylor = cfg_full.with_variant(SweepVariant::Taylor);

    let mut graph = DataTable::new(&["y", "f_full", "f_taylor", "diagonal"]);
    base_meta(&mut graph);
    graph
        .meta("alpha", alpha)
        .meta("energy", energy)
        .meta_num("stiffness", k);
    let fps = find_fixed_points(&cfg_taylor);
    if let Some(stable) = fps.iter().find(|p| p.f_prime.abs() < 1.0) {
        graph.meta_num("y_stable", stable.y);
        graph.meta_num("f_prime_stable", stable.f_prime);
        if let Some(unstable) = fps.iter().find(|p| p.y > stable.y) {
            graph.meta_num("y_unstable", unstable.y);
            graph.meta_num("f_prime_unstable", unstable.f_prime);
        }
    }
    let (lo, hi) = cfg_full.domain();
    for y in linspace(lo + 1e-9, hi - 1e-9, 601) {
        let (Ok(ff), Ok(ft)) = (apex_return(y, &cfg_full), apex_return(y, &cfg_taylor)) else {
            continue;
        };
        graph.push(vec![y, ff, ft, y]);
    }

    let mut orbit_t = DataTable::new(&["step", "y_i", "y_next", "x_dot_next"]);
    base_meta(&mut orbit_t);
    orbit_t.meta("y0", 0.9415).meta("variant", "full");
    let orbit = iterate(0.9415, &cfg_full, 40)?;
    for (i, w) in orbit.heights.windows(2).enumerate() {
        let x = orbit.x_dots.get(i + 1).copied().unwrap_or(f64::NAN);
        orbit_t.push(vec![i as f64, w[0], w[1], x]);
    }
    orbit_t.meta("terminal", format!("{:?}", orbit.terminal));
    Ok(vec![
        ("fig5_map".into(), graph),
        ("fig5_orbit".into(), orbit_t),
    ])
}

/// Fig 6: velocity stability regions over energy (alpha=pi/9) and over alpha
/// (E=1.8).
pub fn fig6() -> Result<Vec<(String, DataTable)>> {
    let energies = linspace(1.45, 3.0, 32);
    let re = velocity_region(&VelocitySweep::OverEnergy {
        alpha: PI / 9.0,
        energies,
    });
    let mut te = DataTable::new(&["e_s", "theta_lower", "theta_upper"]);
    base_meta(&mut te);
    te.meta("alpha", PI / 9.0);
    te.meta(
        "note",
        "theta_upper solves f' = -1, theta_lower solves f' = +1",
    );
    for p in &re.points {
        te.push(vec![
            p.param,
            p.lower.unwrap_or(f64::NAN),
            p.upper.unwrap_or(f64::NAN),
        ]);
    }
    let alphas = linspace(PI / 18.0, PI / 6.0, 25);
    let ra = velocity_region(&VelocitySweep::OverAlpha {
        energy: 1.8,
        alphas,
    });
    let mut ta = DataTable::new(&["alpha", "theta_lower", "theta_upper"]);
    base_meta(&mut ta);
    ta.meta("energy", 1.8);
    for p in &ra.points {
        ta.push(vec![
            p.param,
            p.lower.unwrap_or(f64::NAN),
            p.upper.unwrap_or(f64::NAN),
        ]);
    }
    Ok(vec![
        ("fig6_energy_sweep".into(), te),
        ("fig6_alpha_sweep".into(), ta),
    ])
}

/// Fig 7: general-case stability regions at theta_d* = 1.5.
pub fn fig7() -> Result<Vec<(String, DataTable)>> {
    let alphas = linspace(PI / 18.0, PI / 6.0, 25);
    let mode = RegionMode::General { theta_d_star: 1.5 };
    let er = energy_region(&alphas, mode);
    let kr = stiffness_region(&alphas, mode);
    let mut te = DataTable::new(&["alpha", "e_minus", "e_min", "e_plus"]);
    base_meta(&mut te);
    te.meta("theta_d_star", 1.5);
    for p in &er.points {
        te.push(vec![
            p.param,
            p.lower.unwrap_or(f64::NAN),
            p.min_existence.unwrap_or(f64::NAN),
            p.upper.unwrap_or(f64::NAN),
        ]);
    }
    let mut tk = DataTable::new(&["alpha", "k_minus", "k_min", "k_plus"]);
    base_meta(&mut tk);
    tk.meta("theta_d_star", 1.5);
    for p in &kr.points {
        tk.push(vec![
            p.param,
            p.lower.unwrap_or(f64::NAN),
            p.min_existence.unwrap_or(f64::NAN),
            p.upper.unwrap_or(f64::NAN),
        ]);
    }
    Ok(vec![
        ("fig7_energy_region".into(), te),
        ("fig7_stiffness_region".into(), tk),
    ])
}

pub fn branch_table(alpha: f64, pair: &BranchPair, event: Option<&BifurcationEvent>) -> DataTable {
    // branch column: 0 = starts lower, 1 = starts upper, 2 = detected event row
    let mut t = DataTable::new(&["branch", "e_s", "y_star", "f_prime", "stable", "k_used"]);
    base_meta(&mut t);
    t.meta("alpha", alpha);
    if let Some(ev) = event {
        t.meta_num("transcritical_e_s", ev.e_s_star);
        t.meta_num("transcritical_y", ev.y_star);
    }
    for (id, branch) in [(0.0, &pair.lower), (1.0, &pair.upper)] {
        for p in &branch.points {
            t.push(vec![
                id,
                p.e_s,
                p.y_star,
                p.f_prime,
                p.stable as u8 as f64,
                p.k_used,
            ]);
        }
    }
    if let Some(ev) = event {
        t.push(vec![2.0, ev.e_s_star, ev.y_star, 1.0, f64::NAN, f64::NAN]);
    }
    t
}

/// Fig 8: one-parameter bifurcation diagram at alpha=pi/12 over
/// E_s in [1.51, 1.58].
pub fn fig8() -> Result<Vec<(String, DataTable)>> {
    let alpha = PI / 12.0;
    let rule = KRule::default();
    let pair = continue_branch(alpha, (1.51, 1.58), 0.0025, rule)?;
    let event = detect_transcritical(&pair, alpha, rule)?;
    Ok(vec![(
        "fig8_branches".into(),
        branch_table(alpha, &pair, Some(&event)),
    )])
}

/// Fig 9: the return map at three energies straddling the bifurcation.
pub fn fig9() -> Result<Vec<(String, DataTable)>> {
    let alpha = PI / 12.0;
    let rule = KRule::default();
    let mut t = DataTable::new(&["e_s", "k", "y", "f_taylor", "diagonal"]);
    base_meta(&mut t);
    t.meta("alpha", alpha);
    for e in [1.515, 1.550, 1.575] {
        let k = rule.k_at(alpha, e)?;
        let cfg = MapConfig::new(alpha, e, k)?.with_variant(SweepVariant::Taylor);
        let (lo, hi) = cfg.domain();
        for y in linspace(lo + 1e-9, (lo + 0.25 * (hi - lo)).min(hi), 401) {
            if let Ok(f) = apex_return(y, &cfg) {
                t.push(vec![e, k, y, f, y]);
            }
        }
    }
    Ok(vec![("fig9_maps".into(), t)])
}

/// Table 1: E_s^min, K^min and dL_max across both parameter sweeps.
pub fn table1() -> Result<Vec<(String, DataTable)>> {
    let mut t = DataTable::new(&[
        "sweep",
        "alpha",
        "theta_d_star",
        "e_s_min",
        "k_min",
        "delta_l_max",
    ]);
    base_meta(&mut t);
    t.meta("sweep_0", "alpha sweep at theta_d_star = 1.18");
    t.meta("sweep_1", "theta_d_star sweep at alpha = 20 deg");
    for deg in [10.0, 15.0, 20.0, 25.0, 30.0] {
        let a = deg * PI / 180.0;
        let km = stiffness_minimum(1.18, a)
            .map_err(|e| anyhow!("K^min at alpha={deg} deg: {e}"))?
            .k;
        t.push(vec![
            0.0,
            a,
            1.18,
            min_energy(1.18, a),
            km,
            table_delta_l_max(1.18, a, km),
        ]);
    }
    let a20 = 20.0 * PI / 180.0;
    for th in [0.95, 1.0, 1.05, 1.10, 1.15] {
        let km = stiffness_minimum(th, a20)
            .map_err(|e| anyhow!("K^min at theta*={th}: {e}"))?
            .k;
        t.push(vec![
            1.0,
            a20,
            th,
            min_energy(th, a20),
            km,
            table_delta_l_max(th, a20, km),
        ]);
    }
    Ok(vec![("table1".into(), t)])
}

pub fn reproduce(target: &str) -> Result<Vec<(String, DataTable)>> {
    match target {
        "fig2" => fig2(),
        "fig3" => fig3(),
        "fig4" => fig4(),
        "fig5" => fig5(),
        "fig6" => fig6(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        "fig9" => fig9(),
        "table1" => table1(),
        other => Err(anyhow!("unknown reproduction target '{other}'")),
    }
}
