//! Command implementations: each builds the requested objects from a
//! [`ScenarioConfig`], writes its result files into the output directory,
//! and returns a JSON summary for stdout.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use bogolat::{
    build_l1, build_l2, certified_depth, compute_frc, compute_moments, depth_for_count,
    evolve_moments_series, lattice_charpoly, miura_forward, miura_inverse, monitor_integrals,
    reconstruct_sparse_lattice, rk4_integrate, run_all, solve_cauchy, BigRational, Boundary,
    Family, FrcKind, IntegralMonitor, LatticeState, MiuraSeeds, MomentTable, Scalar,
    SeriesOptions,
};
use serde_json::{json, Value};

use crate::config::{BackendChoice, MethodChoice, ScenarioConfig};
use crate::CliError;

/// Environment override for the per-series Taylor term cap.
pub const MAX_TERMS_ENV: &str = "BOGOLAT_MAX_TERMS";

pub fn series_options(cfg: &ScenarioConfig) -> Result<SeriesOptions, CliError> {
    let max_terms = match std::env::var(MAX_TERMS_ENV) {
        Err(_) => cfg.series_terms_max,
        Ok(text) => text.parse::<usize>().map_err(|_| {
            CliError::Config(format!("{MAX_TERMS_ENV}={text:?} is not a positive integer"))
        })?,
    };
    if max_terms == 0 {
        return Err(CliError::Config("series term cap must be positive".to_string()));
    }
    Ok(SeriesOptions {
        max_terms,
        tail_tol: cfg.series_tail_tol,
    })
}

fn write_file(out: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", out.display())))?;
    let path = out.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn shape_of(family: Family, p: usize) -> (usize, usize) {
    match family {
        Family::A => (p, 1),
        Family::B => (1, p),
    }
}

fn strings<K: Display>(values: &[K]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

/// Largest reconstruction depth whose moment demand fits under `cap`.
fn max_certified_reconstruction(count: usize, r: usize, q: usize, cap: usize) -> usize {
    (1..=count)
        .rev()
        .find(|&d| depth_for_count(d, r, q) <= cap)
        .unwrap_or(0)
}

fn reconstruction_depth<K: Scalar>(
    cfg: &ScenarioConfig,
    state: &LatticeState<K>,
) -> Result<usize, CliError> {
    let (r, q) = shape_of(state.family, state.p);
    let depth = match cfg.depth {
        Some(d) => d,
        None => match certified_depth(state) {
            None => state.len(),
            Some(cap) => max_certified_reconstruction(state.len(), r, q, cap),
        },
    };
    if depth == 0 || depth > state.len() {
        return Err(CliError::Config(format!(
            "no reconstruction depth in 1..={} is certified for this window",
            state.len()
        )));
    }
    Ok(depth)
}

fn time_grid<K: Scalar>(cfg: &ScenarioConfig) -> bogolat::Result<Vec<K>> {
    let t_end: K = cfg.t_end.parse()?;
    let points = K::from_int(cfg.output_points as i64);
    Ok((0..=cfg.output_points)
        .map(|j| t_end.clone() * K::from_int(j as i64) / points.clone())
        .collect())
}

fn trajectory_csv<K: Display, T: Display>(times: &[T], states: &[Vec<K>]) -> String {
    let mut out = String::from("t,index,value\n");
    for (t, state) in times.iter().zip(states) {
        for (i, v) in state.iter().enumerate() {
            out.push_str(&format!("{t},{i},{v}\n"));
        }
    }
    out
}

fn moments_csv<K: Scalar, T: Display>(times: &[T], tables: &[MomentTable<K>]) -> String {
    let mut out = String::from("t,k,m,n,value\n");
    for (t, table) in times.iter().zip(tables) {
        for k in 0..=table.k_max() {
            for m in 1..=table.r() {
                for n in 1..=table.q() {
                    let v = table.get(k, m, n).expect("within table");
                    out.push_str(&format!("{t},{k},{m},{n},{v}\n"));
                }
            }
        }
    }
    out
}

fn build_matrix<K: Scalar>(state: &LatticeState<K>) -> bogolat::Result<bogolat::BandMatrix<K>> {
    let size = match (state.family, state.boundary) {
        (Family::A, Boundary::OpenEnd) => state.len() + 1,
        _ => state.len() + state.p,
    };
    match state.family {
        Family::A => build_l1(state, size),
        Family::B => build_l2(state, size),
    }
}

/// Moment tables along the series evolution (for moments.csv).
fn moment_history<K: Scalar>(
    state: &LatticeState<K>,
    grid: &[K],
    k_out: usize,
    opts: &SeriesOptions,
) -> bogolat::Result<Vec<MomentTable<K>>> {
    let stride = state.p + 1;
    let mut base_depth = k_out + stride * (opts.max_terms - 1);
    if let Some(cap) = certified_depth(state) {
        if cap < k_out {
            return Err(bogolat::Error::WindowTooSmall {
                window: state.len(),
                detail: format!("moment depth {k_out} exceeds the certified depth {cap}"),
            });
        }
        base_depth = base_depth.min(cap);
    }
    let base = compute_moments(&build_matrix(state)?, base_depth)?;
    grid.iter()
        .map(|t| evolve_moments_series(&base, state.family, t, k_out, opts))
        .collect()
}

fn simulate_series<K: Scalar>(
    cfg: &ScenarioConfig,
    out: &Path,
    files: &mut Vec<String>,
) -> Result<(), CliError> {
    let state: LatticeState<K> = cfg.state()?;
    let opts = series_options(cfg)?;
    let depth = reconstruction_depth(cfg, &state)?;
    let grid: Vec<K> = time_grid(cfg)?;
    let states = solve_cauchy(&state, &grid, depth, &opts)?;
    let coeffs: Vec<Vec<K>> = states.into_iter().map(|s| s.coeffs).collect();
    let path = write_file(out, "trajectory.csv", &trajectory_csv(&grid, &coeffs))?;
    files.push(path.display().to_string());

    let k_out = cfg.moment_depth.unwrap_or(2 * (cfg.p + 1));
    let tables = moment_history(&state, &grid, k_out, &opts)?;
    let path = write_file(out, "moments.csv", &moments_csv(&grid, &tables))?;
    files.push(path.display().to_string());
    Ok(())
}

pub fn cmd_simulate(cfg: &ScenarioConfig, out: &Path) -> Result<Value, CliError> {
    let mut files = Vec::new();
    if cfg.method != MethodChoice::Rk4 {
        match cfg.backend {
            BackendChoice::Rational => simulate_series::<BigRational>(cfg, out, &mut files)?,
            BackendChoice::Float => simulate_series::<f64>(cfg, out, &mut files)?,
        }
    }
    if cfg.method != MethodChoice::Series {
        let state: LatticeState<f64> = cfg.state()?;
        let t_end: f64 = cfg.t_end.parse()?;
        let traj = rk4_integrate(&state, t_end, cfg.dt, false)?;
        let mut times = Vec::new();
        let mut sampled = Vec::new();
        for j in 0..=cfg.output_points {
            let t = t_end * j as f64 / cfg.output_points as f64;
            let idx = ((t / cfg.dt).round() as usize).min(traj.len() - 1);
            times.push(traj.times[idx]);
            sampled.push(traj.states[idx].clone());
        }
        let path = write_file(out, "trajectory_rk4.csv", &trajectory_csv(&times, &sampled))?;
        files.push(path.display().to_string());
    }
    Ok(json!({
        "status": "ok",
        "command": "simulate",
        "method": format!("{:?}", cfg.method).to_lowercase(),
        "backend": format!("{:?}", cfg.backend).to_lowercase(),
        "files": files,
    }))
}

fn reconstruct_with<K: Scalar>(cfg: &ScenarioConfig) -> Result<Value, CliError> {
    let state: LatticeState<K> = cfg.state()?;
    let (r, q) = shape_of(state.family, state.p);
    let depth = reconstruction_depth(cfg, &state)?;
    let need = depth_for_count(depth, r, q);
    if let Some(cap) = certified_depth(&state) {
        if need > cap {
            return Err(CliError::Config(format!(
                "depth-{depth} reconstruction needs {need} moments; the window certifies {cap}"
            )));
        }
    }
    let table = compute_moments(&build_matrix(&state)?, need)?;
    let rebuilt = reconstruct_sparse_lattice(&table, state.family, depth)?;
    let (exact, max_diff) = if K::EXACT {
        (rebuilt.coeffs == state.coeffs[..depth], 0.0)
    } else {
        let d = rebuilt
            .coeffs
            .iter()
            .zip(&state.coeffs)
            .map(|(x, y)| (x.approx() - y.approx()).abs())
            .fold(0.0f64, f64::max);
        (d == 0.0, d)
    };
    Ok(json!({
        "status": "ok",
        "command": "reconstruct",
        "backend": format!("{:?}", cfg.backend).to_lowercase(),
        "depth": depth,
        "moment_depth": need,
        "original": strings(&state.coeffs[..depth]),
        "reconstructed": strings(&rebuilt.coeffs),
        "exact_match": exact,
        "max_abs_diff": max_diff,
    }))
}

pub fn cmd_reconstruct(cfg: &ScenarioConfig, out: &Path) -> Result<Value, CliError> {
    let report = match cfg.backend {
        BackendChoice::Rational => reconstruct_with::<BigRational>(cfg)?,
        BackendChoice::Float => reconstruct_with::<f64>(cfg)?,
    };
    write_file(out, "reconstruct.json", &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(report)
}

pub fn cmd_miura(cfg: &ScenarioConfig, out: &Path) -> Result<Value, CliError> {
    let report = match cfg.family.family() {
        Family::A => {
            // forward image, exact under the rational backend
            let image_values = match cfg.backend {
                BackendChoice::Rational => {
                    let state: LatticeState<BigRational> = cfg.state()?;
                    strings(&miura_forward(&state)?.coeffs)
                }
                BackendChoice::Float => {
                    let state: LatticeState<f64> = cfg.state()?;
                    strings(&miura_forward(&state)?.coeffs)
                }
            };
            json!({
                "status": "ok",
                "command": "miura",
                "direction": "forward",
                "image": image_values,
            })
        }
        Family::B => {
            // inverse along a trajectory; needs the p-1 leading seeds
            let seeds_values: Vec<f64> = cfg
                .seed_values()?
                .ok_or_else(|| {
                    CliError::Config(
                        "inverting a sum lattice needs `seeds` (p-1 leading values)".to_string(),
                    )
                })?;
            let state: LatticeState<f64> = cfg.state()?;
            let t_end: f64 = cfg.t_end.parse()?;
            let traj = rk4_integrate(&state, t_end, cfg.dt, true)?;
            let seeds = MiuraSeeds {
                a_leading: seeds_values,
            };
            let inverse = miura_inverse(&traj, &seeds)?;
            let last = inverse.lattice_state(inverse.len() - 1)?;
            let image = miura_forward(&last)?;
            let residual = image
                .coeffs
                .iter()
                .zip(traj.states.last().unwrap())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            json!({
                "status": "ok",
                "command": "miura",
                "direction": "inverse",
                "recovered_initial": strings(&inverse.states[0]),
                "recovered_final": strings(&last.coeffs),
                "image_residual": residual,
            })
        }
    };
    write_file(out, "miura.json", &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(report)
}

fn frc_with<K: Scalar>(cfg: &ScenarioConfig) -> Result<Value, CliError> {
    let state: LatticeState<K> = cfg.state()?;
    if state.boundary != Boundary::OpenEnd {
        return Err(CliError::Config(
            "finite-rank recurrences are defined for finite lattices; use a `finite` size"
                .to_string(),
        ));
    }
    let p = state.p;
    let n_upper = state.len() - 1;
    let kinds = match state.family {
        Family::A => [FrcKind::C, FrcKind::D],
        Family::B => [FrcKind::CTilde, FrcKind::DTilde],
    };
    let m_sys = kinds[0].system_size(n_upper, p);
    let table = compute_moments(&build_matrix(&state)?, m_sys + m_sys / p + 1)?;
    let mut sets = serde_json::Map::new();
    let mut k_direction_values: Vec<K> = Vec::new();
    for kind in kinds {
        let frc = compute_frc(&table, kind, n_upper, p)?;
        if kind.is_k_direction() {
            k_direction_values = frc.values.clone();
        }
        sets.insert(
            kind.label().to_string(),
            json!({
                "values": strings(&frc.values),
                "residual": frc.residual,
            }),
        );
    }
    let poly = lattice_charpoly(&state)?;
    let negates = poly
        .coeffs
        .iter()
        .zip(&k_direction_values)
        .all(|(c, v)| (-c.clone()) == v.clone());
    Ok(json!({
        "status": "ok",
        "command": "frc",
        "backend": format!("{:?}", cfg.backend).to_lowercase(),
        "system_size": m_sys,
        "sets": Value::Object(sets),
        "charpoly": strings(&poly.coeffs),
        "k_direction_negates_charpoly": negates,
    }))
}

pub fn cmd_frc(cfg: &ScenarioConfig, out: &Path) -> Result<Value, CliError> {
    let report = match cfg.backend {
        BackendChoice::Rational => frc_with::<BigRational>(cfg)?,
        BackendChoice::Float => frc_with::<f64>(cfg)?,
    };
    write_file(out, "frc.json", &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(report)
}

pub fn cmd_integrals(cfg: &ScenarioConfig, out: &Path) -> Result<Value, CliError> {
    let state: LatticeState<f64> = cfg.state()?;
    let t_end: f64 = cfg.t_end.parse()?;
    let traj = rk4_integrate(&state, t_end, cfg.dt, true)?;
    let mut monitors = vec![IntegralMonitor::CoefficientSum];
    if state.family == Family::B && state.p == 2 && state.len() == 4 {
        monitors.push(IntegralMonitor::EndpointProductNeg);
        monitors.push(IntegralMonitor::CrossRatioNeg);
        monitors.push(IntegralMonitor::GaugeRatio { a0_initial: 1.0 });
    }
    if state.boundary == Boundary::OpenEnd {
        monitors.push(IntegralMonitor::AllFrc(match state.family {
            Family::A => FrcKind::C,
            Family::B => FrcKind::CTilde,
        }));
    }
    let reports = monitor_integrals(&traj, &monitors)?;
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "initial": r.values[0],
                "final": *r.values.last().unwrap(),
                "drift": r.drift,
            })
        })
        .collect();
    let report = json!({
        "status": "ok",
        "command": "integrals",
        "t_end": t_end,
        "dt": cfg.dt,
        "monitors": rows,
    });
    write_file(out, "integrals.json", &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(report)
}

/// Returns the report plus the process exit code (0 all passed, 1 otherwise).
pub fn cmd_verify(seed: u64, out: &Path) -> Result<(Value, i32), CliError> {
    let reports = run_all(seed);
    for r in &reports {
        println!("{}", r.line());
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let report = json!({
        "status": if all_passed { "ok" } else { "failed" },
        "command": "verify",
        "seed": seed,
        "all_passed": all_passed,
        "criteria": reports.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "details": r.details,
        })).collect::<Vec<_>>(),
    });
    write_file(out, "verify.json", &serde_json::to_string_pretty(&report).unwrap())?;
    Ok((report, if all_passed { 0 } else { 1 }))
}
