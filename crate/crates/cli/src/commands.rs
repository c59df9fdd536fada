//! Subcommand drivers.

use std::path::{Path, PathBuf};
use std::thread;

use dsw_edge_core::edge_asymptotics::{q_total, Regime};
use dsw_edge_core::scattering::{EdgeFrame, ScatteringData};
use dsw_edge_core::Complex64;

use crate::checks;
use crate::config::{CompareSource, InitialKind, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{read_columns, time_tag, Cell, Table};
use crate::sim::{
    asymptotic_field, compare_edge, step_initial, EdgeComparison, EvolveOptions, Field, Grid, SimError, Solver,
};

/// Maps `f` over `items` on up to `jobs` threads, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn complex_cells(z: Complex64) -> [Cell; 3] {
    [z.re.into(), z.im.into(), z.norm().into()]
}

/// Columns of the `asympt` table.
pub const ASYMPT_COLUMNS: [&str; 17] = [
    "rho", "t", "x", "n", "regime", "re_q_sol", "im_q_sol", "abs_q_sol", "re_q_par", "im_q_par", "abs_q_par",
    "re_q_total", "im_q_total", "abs_q_total", "phi_env", "psi", "nu",
];

fn asympt_row(sd: &ScatteringData, rho: f64, t: f64) -> Result<Vec<Cell>> {
    let edge = EdgeFrame::new(sd, rho, t)?;
    let res = q_total(sd, &edge)?;
    let regime = match res.regime {
        Regime::ParabolicOnly => "parabolic",
        Regime::Soliton(_) => "soliton",
    };
    let mut row = vec![rho.into(), t.into(), edge.x.into(), res.regime.index().into(), regime.into()];
    row.extend(complex_cells(res.q_sol));
    row.extend(complex_cells(res.q_par));
    row.extend(complex_cells(res.q_total));
    row.extend([res.phi_env.into(), res.psi.into(), res.nu.into()]);
    Ok(row)
}

/// Evaluates the edge asymptotics on the `(ρ, t)` grid.
///
/// # Errors
/// Config, core and IO errors.
pub fn asympt(cfg: &RunConfig, jobs: usize) -> Result<Vec<PathBuf>> {
    let sd = cfg.scattering()?;
    let cells: Vec<(f64, f64)> = cfg.rho_list.iter().flat_map(|&r| cfg.t_list.iter().map(move |&t| (r, t))).collect();
    let mut table = Table::new(&ASYMPT_COLUMNS);
    for row in par_map(&cells, jobs, |&(rho, t)| asympt_row(&sd, rho, t)) {
        table.push(row?);
    }
    Ok(vec![table.write(&cfg.output_dir, "asympt", cfg.format, &cfg.echo())?])
}

/// Runs every residual suite and writes the table.
///
/// # Errors
/// [`CliError::CheckFailed`] after writing when any row fails; core and IO errors.
pub fn parametrix_check(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let sd = cfg.scattering()?;
    let rows = checks::run_all(&sd, cfg.checks.inject_fault)?;
    let path = checks::table(&rows).write(&cfg.output_dir, "parametrix_check", cfg.format, &cfg.echo())?;
    let failed = rows.iter().filter(|r| !r.pass()).count();
    if failed > 0 {
        return Err(CliError::CheckFailed { failed, total: rows.len() });
    }
    Ok(vec![path])
}

/// Invariants at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftRecord {
    /// Time.
    pub t: f64,
    /// Mass on the grid.
    pub mass: f64,
    /// Mass removed by the sponge.
    pub absorbed: f64,
    /// Relative mass balance error.
    pub mass_drift: f64,
    /// Energy.
    pub energy: f64,
    /// Relative energy change (not conserved with a sponge).
    pub energy_drift: f64,
    /// Largest modulus.
    pub max_abs: f64,
}

impl DriftRecord {
    fn of(f: &Field) -> Self {
        Self {
            t: f.t,
            mass: f.mass(),
            absorbed: f.absorbed,
            mass_drift: f.mass_drift(),
            energy: f.energy(),
            energy_drift: f.energy_drift(),
            max_abs: f.max_abs(),
        }
    }
}

/// Result of [`run_simulation`].
#[derive(Debug, Clone)]
pub struct SimulationRun {
    /// Fields at the requested times, in increasing time.
    pub snapshots: Vec<Field>,
    /// Requested time of each snapshot; the field time is the nearest step.
    pub requested: Vec<f64>,
    /// Invariants at `t = 0` and at every snapshot.
    pub drift: Vec<DriftRecord>,
    /// Failure that stopped the run early.
    pub error: Option<SimError>,
}

/// Initial field from the solver config.
///
/// # Errors
/// Invalid grid or datum.
pub fn initial_field(cfg: &RunConfig) -> Result<Field> {
    let s = &cfg.solver;
    let spec = cfg.spectrum()?;
    let grid = match (s.domain, s.initial) {
        (Some((lo, hi)), _) => Grid::with_spacing(lo, hi, s.dx)?,
        (None, InitialKind::Step) => Grid::for_step(&spec, s.t_final, s.margin, s.dx)?,
        (None, _) => Grid::with_spacing(-25.6, 25.6, s.dx)?,
    };
    let constant = |v: Complex64| Field::new(grid, 0.0, vec![v; grid.n_points]);
    Ok(match s.initial {
        InitialKind::Step => step_initial(&spec, grid, s.ramp())?,
        InitialKind::Soliton => {
            Field::new(grid, 0.0, grid.xs().iter().map(|x| Complex64::new(1.0 / x.cosh(), 0.0)).collect())?
        }
        InitialKind::PlaneWave => constant(Complex64::new(cfg.b, 0.0))?,
        InitialKind::Zero => constant(Complex64::default())?,
    })
}

/// Evolves the configured datum to `t_final`, keeping fields at `times`
/// (rounded to whole steps) and at `t_final`.
///
/// # Errors
/// Setup errors; a blow-up is returned in [`SimulationRun::error`] together
/// with the records gathered so far.
pub fn run_simulation(cfg: &RunConfig, times: &[f64]) -> Result<SimulationRun> {
    let s = &cfg.solver;
    let mut field = initial_field(cfg)?;
    let scale = cfg.b.max(field.max_abs());
    // Largest admissible step that lands exactly on t_final.
    let n_final = (s.t_final / s.dt.min(0.1 * field.grid.dx)).ceil();
    let dt = s.t_final / n_final;
    let mut wanted: Vec<f64> = times.iter().copied().chain([s.t_final]).collect();
    wanted.sort_by(f64::total_cmp);
    wanted.dedup();
    let mut solver = Solver::new(field.grid, dt, EvolveOptions::with_sponge(scale, s.sponge_fraction))?;
    let mut run =
        SimulationRun { snapshots: Vec::new(), requested: Vec::new(), drift: vec![DriftRecord::of(&field)], error: None };
    let mut done = 0;
    for t in wanted {
        let m = (t / dt).round() as usize;
        if let Err(e) = solver.advance(&mut field, m - done) {
            run.error = Some(e);
            break;
        }
        done = m;
        run.drift.push(DriftRecord::of(&field));
        run.snapshots.push(field.clone());
        run.requested.push(t);
    }
    Ok(run)
}

fn snapshot_stem(t: f64) -> String {
    format!("snapshot_{}", time_tag(t))
}

/// Runs the solver and writes snapshots plus the drift log.
///
/// # Errors
/// [`CliError::Sim`] on blow-up (after writing the log); setup and IO errors.
pub fn simulate(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let run = run_simulation(cfg, &cfg.solver.snapshots)?;
    let echo = cfg.echo();
    let mut files = Vec::new();
    for (f, &when) in run.snapshots.iter().zip(&run.requested) {
        let mut t = Table::new(&["x", "re_q", "im_q", "abs_q"]);
        for (x, q) in f.grid.xs().into_iter().zip(&f.values) {
            t.push(vec![x.into(), q.re.into(), q.im.into(), q.norm().into()]);
        }
        files.push(t.write(&cfg.output_dir, &snapshot_stem(when), cfg.format, &echo)?);
    }
    let mut log = Table::new(&["t", "mass", "absorbed", "mass_drift", "energy", "energy_drift", "max_abs"]);
    for d in &run.drift {
        log.push(vec![
            d.t.into(),
            d.mass.into(),
            d.absorbed.into(),
            d.mass_drift.into(),
            d.energy.into(),
            d.energy_drift.into(),
            d.max_abs.into(),
        ]);
    }
    files.push(log.write(&cfg.output_dir, "drift", cfg.format, &echo)?);
    match run.error {
        Some(e) => Err(e.into()),
        None => Ok(files),
    }
}

/// Loads a snapshot written by [`simulate`].
///
/// # Errors
/// [`CliError::Config`] when the file is missing or not on a uniform
/// power-of-two grid.
pub fn load_snapshot(path: &Path, t: f64) -> Result<Field> {
    let cols = read_columns(path, &["x", "re_q", "im_q"])?;
    let (xs, re, im) = (&cols[0], &cols[1], &cols[2]);
    let bad = || CliError::Config(format!("{}: not a uniform grid", path.display()));
    if xs.len() < 2 {
        return Err(bad());
    }
    let dx = xs[1] - xs[0];
    let grid = Grid::new(xs[0], xs[0] + dx * xs.len() as f64, xs.len()).map_err(|_| bad())?;
    if xs.iter().enumerate().any(|(j, &x)| (x - grid.x(j)).abs() > 1e-9 * (1.0 + x.abs())) {
        return Err(bad());
    }
    Ok(Field::new(grid, t, re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())?)
}

/// Result of [`compare`].
#[derive(Debug, Clone)]
pub struct CompareOutcome {
    /// Files written.
    pub files: Vec<PathBuf>,
    /// One comparison per time of `t_list`, sorted by time.
    pub comparisons: Vec<EdgeComparison>,
    /// Grid spacing of the numerical fields.
    pub dx: f64,
}

impl CompareOutcome {
    /// Whether `linf_env` decreases strictly from each time to the next.
    pub fn linf_decreasing(&self) -> bool {
        self.comparisons.windows(2).all(|w| w[1].linf_env < w[0].linf_env)
    }
}

/// Compares numerical and asymptotic envelopes at every time of `t_list`.
///
/// # Errors
/// [`CliError::Config`] for missing snapshots or times past `t_final`;
/// solver, core and IO errors.
pub fn compare(cfg: &RunConfig, jobs: usize) -> Result<CompareOutcome> {
    let sd = cfg.scattering()?;
    let mut times = cfg.t_list.clone();
    times.sort_by(f64::total_cmp);
    let fields: Vec<Field> = match cfg.compare.source {
        CompareSource::Snapshots => {
            let dir = cfg.compare.input_dir.as_deref().unwrap_or(&cfg.output_dir);
            times
                .iter()
                .map(|&t| load_snapshot(&dir.join(format!("{}.{}", snapshot_stem(t), cfg.format.extension())), t))
                .collect::<Result<_>>()?
        }
        CompareSource::Simulate => {
            if let Some(t) = times.iter().find(|&&t| t > cfg.solver.t_final) {
                return Err(CliError::Config(format!("t = {t} exceeds solver.t_final")));
            }
            let run = run_simulation(cfg, &times)?;
            if let Some(e) = run.error {
                return Err(e.into());
            }
            run.snapshots.into_iter().zip(run.requested).filter(|(_, r)| times.contains(r)).map(|(f, _)| f).collect()
        }
        CompareSource::SelfCheck => times
            .iter()
            .map(|&t| {
                let w = cfg.window_at(t);
                let grid = Grid::with_spacing(w.0 - 1.0, w.1 + 1.0, cfg.solver.dx)?;
                Ok(asymptotic_field(&sd, grid, t, w)?)
            })
            .collect::<Result<_>>()?,
    };
    let dx = fields.first().map_or(cfg.solver.dx, |f| f.grid.dx);
    let comparisons = par_map(&fields, jobs, |f| compare_edge(f, &sd, cfg.window_at(f.t)))
        .into_iter()
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let echo = cfg.echo();
    let mut files = Vec::new();
    let c_speed = -4.0 * cfg.a;
    let mut summary = Table::new(&[
        "t", "linf_env", "l2_env", "linf_decreased", "n_peaks", "lead_x_asym", "lead_x_num", "lead_offset",
        "lead_shift_num", "lead_shift_asym", "dx",
    ]);
    let mut peaks = Table::new(&["t", "index", "x_asym", "x_num", "offset"]);
    for (i, cmp) in comparisons.iter().enumerate() {
        let mut t = Table::new(&["x", "abs_num", "abs_asym", "diff"]);
        for ((x, a), b) in cmp.xs.iter().zip(&cmp.abs_num).zip(&cmp.abs_asym) {
            t.push(vec![(*x).into(), (*a).into(), (*b).into(), (a - b).into()]);
        }
        files.push(t.write(&cfg.output_dir, &format!("compare_{}", time_tag(cmp.t)), cfg.format, &echo)?);
        for (j, p) in cmp.peaks.iter().enumerate() {
            peaks.push(vec![cmp.t.into(), j.into(), p.x_asym.into(), p.x_num.into(), p.offset().into()]);
        }
        let lead = cmp.peaks.first();
        let decreased = (i > 0).then(|| cmp.linf_env < comparisons[i - 1].linf_env);
        summary.push(vec![
            cmp.t.into(),
            cmp.linf_env.into(),
            cmp.l2_env.into(),
            decreased.map(|d| if d { "yes" } else { "no" }).into(),
            cmp.peaks.len().into(),
            lead.map(|p| p.x_asym).into(),
            lead.and_then(|p| p.x_num).into(),
            lead.map(|p| p.offset()).into(),
            lead.and_then(|p| p.x_num).map(|x| x - c_speed * cmp.t).into(),
            lead.map(|p| p.x_asym - c_speed * cmp.t).into(),
            dx.into(),
        ]);
    }
    files.push(peaks.write(&cfg.output_dir, "compare_peaks", cfg.format, &echo)?);
    files.push(summary.write(&cfg.output_dir, "compare_summary", cfg.format, &echo)?);
    Ok(CompareOutcome { files, comparisons, dx })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_keeps_order() {
        let v: Vec<u32> = (0..37).collect();
        for jobs in [1, 2, 5, 64] {
            assert_eq!(par_map(&v, jobs, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
        }
        assert!(par_map(&[] as &[u32], 4, |x| *x).is_empty());
    }

    #[test]
    fn snapshot_marks() {
        let cfg = RunConfig::from_toml(
            "A = 0.0\nB = 1.0\nsolver.initial = \"plane_wave\"\nsolver.dx = 0.2\nsolver.dt = 0.01\nsolver.t_final = 0.5\nsolver.sponge_fraction = 0.0\n",
        )
        .unwrap();
        let run = run_simulation(&cfg, &[0.2, 0.2, 0.1]).unwrap();
        let ts: Vec<f64> = run.snapshots.iter().map(|f| f.t).collect();
        assert_eq!(ts.len(), 3);
        assert_eq!(run.requested, vec![0.1, 0.2, 0.5]);
        assert!((ts[0] - 0.1).abs() < 1e-12 && (ts[2] - 0.5).abs() < 1e-12);
        assert!(run.drift.iter().all(|d| d.mass_drift.abs() < 1e-12));
    }
}
