//! `sliplab` — command-line front-end for the spring-mass running model:
//! stance trajectories, stiffness estimates, the apex return map, fixed
//! points and their stability regions, energy continuation, and one-command
//! reproduction of the published figures and table.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use slip_cli::output::{DataTable, Format};
use slip_cli::scenarios;
use slip_core::*;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "sliplab",
    version,
    about = "Spring-mass running model laboratory"
)]
struct Cli {
    /// Output directory (also settable via SLIPLAB_OUT_DIR); default "."
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Output file stem; defaults to the subcommand's own name(s)
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Asymptotic stance trajectory (or the ODE oracle's, with --oracle)
    Stance {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        stiffness: f64,
        #[arg(long, default_value_t = 1.0)]
        x_vel: f64,
        #[arg(long, default_value_t = 0.1)]
        y_vel: f64,
        /// Integrate the full nonlinear equations instead of the closed form
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Stiffness estimates: symmetric quadratic, leading order, minimum
    Stiffness {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        theta_d: f64,
        /// Landing speed; derived from --energy when absent
        #[arg(long)]
        l_d: Option<f64>,
        #[arg(long)]
        energy: Option<f64>,
    },
    /// Shooting solve of the exact symmetric stiffness K*
    Kstar {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        x_vel: f64,
        #[arg(long, default_value_t = 0.1)]
        y_vel: f64,
    },
    /// Apex return map: graph over the domain, or an orbit from --y0
    Map {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        energy: f64,
        #[arg(long)]
        stiffness: f64,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long)]
        y0: Option<f64>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Fixed points of the return map with finite-difference derivatives
    FixedPoints {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        energy: f64,
        #[arg(long)]
        stiffness: f64,
        #[arg(long, value_enum, default_value = "taylor")]
        variant: VariantArg,
    },
    /// Stability regions over an angle-of-attack sweep
    Regions {
        /// theta_d* for the general mode; the special case sqrt(cos alpha)
        /// is used when absent
        #[arg(long)]
        theta_d: Option<f64>,
        /// Angle sweep start:stop:step (radians)
        #[arg(long)]
        sweep: String,
    },
    /// Fixed-point continuation in energy with transcritical detection
    Continuation {
        #[arg(long)]
        alpha: f64,
        /// Energy sweep start:stop:step
        #[arg(long)]
        sweep: String,
        /// theta_d* anchoring the stiffness rule K(E_s)
        #[arg(long, default_value_t = 1.0)]
        theta_d: f64,
    },
    /// Reproduce a published figure or table
    Reproduce {
        /// One of fig2..fig9, table1
        target: String,
    },
    /// Convert dimensionless energy/velocity to SI units
    Dimensionalize {
        #[arg(long)]
        energy: Option<f64>,
        #[arg(long)]
        x_vel: Option<f64>,
        #[arg(long, default_value_t = 75.0)]
        mass: f64,
        #[arg(long, default_value_t = 9.81)]
        gravity: f64,
        #[arg(long, default_value_t = 1.0)]
        leg_length: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum VariantArg {
    Full,
    Taylor,
}

impl From<VariantArg> for SweepVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => SweepVariant::Full,
            VariantArg::Taylor => SweepVariant::Taylor,
        }
    }
}

fn parse_sweep(s: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("sweep must be start:stop:step, got '{s}'");
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .with_context(|| format!("bad sweep component '{p}'"))
        })
        .collect::<Result<_>>()?;
    if nums[2] <= 0.0 || nums[1] <= nums[0] {
        bail!("sweep must be increasing with positive step");
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn sweep_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut x = lo;
    while x <= hi + 1e-12 {
        out.push(x);
        x += step;
    }
    out
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os("SLIPLAB_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;

    let tables = dispatch(&cli.command)?;
    let many = tables.len() > 1;
    for (stem, table) in &tables {
        let stem = match (&cli.out, many) {
            (Some(name), false) => name.clone(),
            (Some(name), true) => format!("{name}_{stem}"),
            (None, _) => stem.clone(),
        };
        let path = out_dir.join(format!("{stem}.{}", cli.format.extension()));
        table.write(&path, cli.format)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn dispatch(cmd: &Command) -> Result<Vec<(String, DataTable)>> {
    match cmd {
        Command::Stance {
            alpha,
            stiffness,
            x_vel,
            y_vel,
            oracle,
            samples,
        } => stance_cmd(*alpha, *stiffness, *x_vel, *y_vel, *oracle, *samples),
        Command::Stiffness {
            alpha,
            theta_d,
            l_d,
            energy,
        } => stiffness_cmd(*alpha, *theta_d, *l_d, *energy),
        Command::Kstar {
            alpha,
            x_vel,
            y_vel,
        } => kstar_cmd(*alpha, *x_vel, *y_vel),
        Command::Map {
            alpha,
            energy,
            stiffness,
            variant,
            y0,
            steps,
        } => map_cmd(*alpha, *energy, *stiffness, (*variant).into(), *y0, *steps),
        Command::FixedPoints {
            alpha,
            energy,
            stiffness,
            variant,
        } => fixed_points_cmd(*alpha, *energy, *stiffness, (*variant).into()),
        Command::Regions { theta_d, sweep } => regions_cmd(*theta_d, sweep),
        Command::Continuation {
            alpha,
            sweep,
            theta_d,
        } => continuation_cmd(*alpha, sweep, *theta_d),
        Command::Reproduce { target } => scenarios::reproduce(target),
        Command::Dimensionalize {
            energy,
            x_vel,
            mass,
            gravity,
            leg_length,
        } => dimensionalize_cmd(*energy, *x_vel, *mass, *gravity, *leg_length),
    }
}

fn stance_cmd(
    alpha: f64,
    stiffness: f64,
    x_vel: f64,
    y_vel: f64,
    oracle: bool,
    samples: usize,
) -> Result<Vec<(String, DataTable)>> {
    let params = ModelParams::new(alpha, stiffness)?;
    let td = touchdown_polar_from_cartesian(x_vel, y_vel, alpha)?;
    if oracle {
        let traj = integrate_stance(&td, &params)?;
        let mut t = DataTable::new(&["t", "l", "l_dot", "theta", "theta_dot", "energy"]);
        t.meta("alpha", alpha).meta("stiffness", stiffness);
        t.meta("x_vel", x_vel).meta("y_vel", y_vel);
        t.meta_num("takeoff_t", traj.takeoff.t);
        t.meta_num("takeoff_theta", traj.takeoff.theta);
        t.meta("accepted_steps", traj.stats.accepted);
        t.meta("rejected_steps", traj.stats.rejected);
        for s in &traj.samples {
            t.push(vec![
                s.t,
                s.l,
                s.l_dot,
                s.theta,
                s.theta_dot,
                stance_energy(s, &params),
            ]);
        }
        return Ok(vec![("stance_oracle".into(), t)]);
    }
    let co = stance_coefficients(&td, &params)?;
    let mut t = DataTable::new(&["t", "l", "theta"]);
    t.meta("alpha", alpha).meta("stiffness", stiffness);
    t.meta("x_vel", x_vel).meta("y_vel", y_vel);
    t.meta_num("center_shift_a", co.center_shift);
    t.meta_num("amplitude_b", co.amplitude);
    t.meta_num("delta_l_max", co.delta_l_max);
    t.meta_num("t_contact", co.t_contact);
    t.meta_num("delta_theta", sweep_angle(&td, &params)?);
    for i in 0..samples {
        let tt = co.t_contact * i as f64 / (samples - 1) as f64;
        t.push(vec![
            tt,
            radial_motion(tt, &td, &params)?,
            angular_motion(tt, &td, &params)?,
        ]);
    }
    Ok(vec![("stance".into(), t)])
}

fn stiffness_cmd(
    alpha: f64,
    theta_d: f64,
    l_d: Option<f64>,
    energy: Option<f64>,
) -> Result<Vec<(String, DataTable)>> {
    let l_d = match (l_d, energy) {
        (Some(l), _) => l,
        (None, Some(e)) => radial_speed_from_energy(e, theta_d, alpha)?,
        (None, None) => bail!("provide --l-d or --energy"),
    };
    let td = TouchdownState::new(theta_d, l_d, alpha)?;
    let quad = stiffness_symmetric(&td, alpha)?;
    let lead = stiffness_leading(theta_d, alpha);
    let min = stiffness_minimum(theta_d, alpha)?;
    let mut t = DataTable::new(&["k_quadratic", "discriminant", "k_tilde", "k_min"]);
    t.meta("alpha", alpha)
        .meta("theta_d", theta_d)
        .meta("l_d", l_d);
    t.push(vec![quad.k, quad.discriminant, lead.k, min.k]);
    Ok(vec![("stiffness".into(), t)])
}

fn kstar_cmd(alpha: f64, x_vel: f64, y_vel: f64) -> Result<Vec<(String, DataTable)>> {
    let params = ModelParams::new(alpha, 1.0)?;
    let bracket = default_k_bracket(x_vel, y_vel, alpha)?;
    let sol = solve_k_star(x_vel, y_vel, alpha, bracket, &params)?;
    let td = touchdown_polar_from_cartesian(x_vel, y_vel, alpha)?;
    let kq = stiffness_symmetric(&td, alpha)?.k;
    let kt = stiffness_leading(td.theta_d, alpha).k;
    let mut t = DataTable::new(&["k_star", "t_star", "residual", "k_quadratic", "k_tilde"]);
    t.meta("alpha", alpha)
        .meta("x_vel", x_vel)
        .meta("y_vel", y_vel);
    t.push(vec![sol.k_star, sol.t_star, sol.residual, kq, kt]);
    Ok(vec![("kstar".into(), t)])
}

fn map_cmd(
    alpha: f64,
    energy: f64,
    stiffness: f64,
    variant: SweepVariant,
    y0: Option<f64>,
    steps: usize,
) -> Result<Vec<(String, DataTable)>> {
    let cfg = MapConfig::new(alpha, energy, stiffness)?.with_variant(variant);
    if let Some(y0) = y0 {
        let orbit = iterate(y0, &cfg, steps)?;
        let mut t = DataTable::new(&["i", "y", "x_dot"]);
        t.meta("alpha", alpha)
            .meta("energy", energy)
            .meta("stiffness", stiffness);
        t.meta("terminal", format!("{:?}", orbit.terminal));
        for (i, y) in orbit.heights.iter().enumerate() {
            t.push(vec![
                i as f64,
                *y,
                orbit.x_dots.get(i).copied().unwrap_or(f64::NAN),
            ]);
        }
        return Ok(vec![("orbit".into(), t)]);
    }
    let mut t = DataTable::new(&["y", "f", "diagonal"]);
    t.meta("alpha", alpha)
        .meta("energy", energy)
        .meta("stiffness", stiffness);
    let (lo, hi) = cfg.domain();
    for i in 0..=600 {
        let y = lo + 1e-9 + (hi - lo - 2e-9) * i as f64 / 600.0;
        if let Ok(f) = apex_return(y, &cfg) {
            t.push(vec![y, f, y]);
        }
    }
    Ok(vec![("map".into(), t)])
}

fn fixed_points_cmd(
    alpha: f64,
    energy: f64,
    stiffness: f64,
    variant: SweepVariant,
) -> Result<Vec<(String, DataTable)>> {
    let cfg = MapConfig::new(alpha, energy, stiffness)?.with_variant(variant);
    let mut t = DataTable::new(&["y_star", "f_prime", "stable"]);
    t.meta("alpha", alpha)
        .meta("energy", energy)
        .meta("stiffness", stiffness);
    for fp in find_fixed_points(&cfg) {
        t.push(vec![
            fp.y,
            fp.f_prime,
            (fp.f_prime.abs() < 1.0) as u8 as f64,
        ]);
    }
    Ok(vec![("fixed_points".into(), t)])
}

fn regions_cmd(theta_d: Option<f64>, sweep: &str) -> Result<Vec<(String, DataTable)>> {
    let (lo, hi, step) = parse_sweep(sweep)?;
    let alphas = sweep_grid(lo, hi, step);
    let mode = match theta_d {
        Some(t) => RegionMode::General { theta_d_star: t },
        None => RegionMode::SpecialCase,
    };
    let er = energy_region(&alphas, mode);
    let kr = stiffness_region(&alphas, mode);
    let mut t = DataTable::new(&[
        "alpha", "e_minus", "e_min", "e_plus", "k_minus", "k_min", "k_plus",
    ]);
    match mode {
        RegionMode::SpecialCase => t.meta("theta_d_star", "sqrt(cos alpha)"),
        RegionMode::General { theta_d_star } => t.meta("theta_d_star", theta_d_star),
    };
    for (e, k) in er.points.iter().zip(kr.points.iter()) {
        t.push(vec![
            e.param,
            e.lower.unwrap_or(f64::NAN),
            e.min_existence.unwrap_or(f64::NAN),
            e.upper.unwrap_or(f64::NAN),
            k.lower.unwrap_or(f64::NAN),
            k.min_existence.unwrap_or(f64::NAN),
            k.upper.unwrap_or(f64::NAN),
        ]);
    }
    Ok(vec![("regions".into(), t)])
}

fn continuation_cmd(alpha: f64, sweep: &str, theta_d: f64) -> Result<Vec<(String, DataTable)>> {
    let (lo, hi, step) = parse_sweep(sweep)?;
    let rule = KRule::FixedThetaD(theta_d);
    let pair = continue_branch(alpha, (lo, hi), step, rule)
        .map_err(|e| anyhow!("continuation failed: {e}"))?;
    let event = detect_transcritical(&pair, alpha, rule).ok();
    Ok(vec![(
        "continuation".into(),
        scenarios::branch_table(alpha, &pair, event.as_ref()),
    )])
}

fn dimensionalize_cmd(
    energy: Option<f64>,
    x_vel: Option<f64>,
    mass: f64,
    gravity: f64,
    leg_length: f64,
) -> Result<Vec<(String, DataTable)>> {
    if mass <= 0.0 || gravity <= 0.0 || leg_length <= 0.0 {
        bail!("mass, gravity and leg length must be positive");
    }
    if energy.is_none() && x_vel.is_none() {
        bail!("provide --energy and/or --x-vel");
    }
    let mut t = DataTable::new(&["e_s", "energy_joules", "x_vel", "velocity_m_per_s"]);
    t.meta("mass_kg", mass)
        .meta("gravity_m_per_s2", gravity)
        .meta("leg_length_m", leg_length);
    let e = energy.unwrap_or(f64::NAN);
    let x = x_vel.unwrap_or(f64::NAN);
    t.push(vec![
        e,
        mass * gravity * leg_length * e,
        x,
        x * (gravity * leg_length).sqrt(),
    ]);
    if let Some(e) = energy {
        println!("energy: {} J", mass * gravity * leg_length * e);
    }
    if let Some(x) = x_vel {
        println!("velocity: {} m/s", x * (gravity * leg_length).sqrt());
    }
    Ok(vec![("dimensionalize".into(), t)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        assert_eq!(parse_sweep("1.51:1.58:0.005").unwrap(), (1.51, 1.58, 0.005));
        assert!(parse_sweep("1:2").is_err());
        assert!(parse_sweep("2:1:0.1").is_err());
        assert!(parse_sweep("1:2:0").is_err());
        assert_eq!(sweep_grid(0.0, 1.0, 0.25).len(), 5);
    }

    #[test]
    fn dimensionalize_values() {
        let t = dimensionalize_cmd(Some(1.5), Some(1.0), 75.0, 9.81, 1.0).unwrap();
        let row = &t[0].1.rows[0];
        assert!((row[1] - 1103.625).abs() < 0.1);
        assert!((row[3] - 3.13).abs() < 0.005);
        assert!(dimensionalize_cmd(Some(1.0), None, 0.0, 9.81, 1.0).is_err());
        let t0 = dimensionalize_cmd(Some(0.0), None, 75.0, 9.81, 1.0).unwrap();
        assert_eq!(t0[0].1.rows[0][1], 0.0);
    }
}
