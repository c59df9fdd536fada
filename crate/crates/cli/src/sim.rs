//! Split-step Fourier solver for `i q_t + q_xx + 2|q|²q = 0`.
//!
//! Strang splitting: half a linear step `q̂ ↦ e^{−ik²dt/2} q̂`, the exact
//! nonlinear rotation `q ↦ e^{2i|q|²dt} q`, another half linear step. The
//! domain is periodic; an optional quartic sponge at both ends absorbs
//! outgoing waves. Mass removed by the sponge is tracked so that the mass
//! balance can still be checked.

use std::f64::consts::PI;
use std::sync::Arc;

use dsw_edge_core::edge_asymptotics::q_total;
use dsw_edge_core::scattering::{EdgeFrame, ScatteringData};
use dsw_edge_core::spectrum::Genus0Spectrum;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

/// Solver failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    /// Grid or step parameters violate their invariants.
    #[error("invalid solver setup: {0}")]
    Setup(String),
    /// The field grew past the blow-up limit.
    #[error("blow-up at t = {t}: max|q| = {max_abs} exceeds {limit}")]
    Blowup {
        /// Time of detection.
        t: f64,
        /// Largest modulus found.
        max_abs: f64,
        /// Limit in force.
        limit: f64,
    },
    /// The asymptotic comparison failed.
    #[error("asymptotics: {0}")]
    Asymptotics(#[from] dsw_edge_core::Error),
}

/// Uniform periodic grid `x_j = x_min + j·dx`, `j < n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    /// Left end.
    pub x_min: f64,
    /// Right end (excluded).
    pub x_max: f64,
    /// Number of points, a power of two.
    pub n_points: usize,
    /// Spacing `(x_max − x_min)/n_points`.
    pub dx: f64,
}

impl Grid {
    /// # Errors
    /// [`SimError::Setup`] unless `x_min < x_max` and `n_points` is a power of two.
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self, SimError> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(SimError::Setup(format!("bad domain [{x_min}, {x_max})")));
        }
        if n_points < 2 || !n_points.is_power_of_two() {
            return Err(SimError::Setup(format!("n_points = {n_points} is not a power of two")));
        }
        Ok(Self { x_min, x_max, n_points, dx: (x_max - x_min) / n_points as f64 })
    }

    /// Smallest power-of-two grid on `[x_min, x_max)` with spacing at most `dx`.
    ///
    /// # Errors
    /// As [`Grid::new`], or for a non-positive `dx`.
    pub fn with_spacing(x_min: f64, x_max: f64, dx: f64) -> Result<Self, SimError> {
        if !(dx > 0.0) {
            return Err(SimError::Setup(format!("dx = {dx} must be positive")));
        }
        let n = ((x_max - x_min) / dx).ceil().max(2.0) as usize;
        Self::new(x_min, x_max, n.next_power_of_two())
    }

    /// Grid coordinate `j`.
    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    /// All coordinates.
    pub fn xs(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// Angular wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n_points;
        let dk = 2.0 * PI / (self.x_max - self.x_min);
        (0..n).map(|j| if j < n / 2 { j as f64 } else { j as f64 - n as f64 } * dk).collect()
    }

    /// Domain sized so that both edges of the step solution stay interior
    /// until `t_final`.
    ///
    /// # Errors
    /// As [`Grid::with_spacing`].
    pub fn for_step(spec: &Genus0Spectrum, t_final: f64, margin: f64, dx: f64) -> Result<Self, SimError> {
        let reach = (4.0 * spec.a.abs() + 8.0 * spec.b) * t_final + margin;
        Self::with_spacing(-reach, reach, dx)
    }
}

/// Discrete solution at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    /// Grid.
    pub grid: Grid,
    /// Time.
    pub t: f64,
    /// Samples `q(x_j, t)`.
    pub values: Vec<Complex64>,
    /// Mass at creation.
    pub mass0: f64,
    /// Energy at creation.
    pub energy0: f64,
    /// Mass removed by the sponge so far.
    pub absorbed: f64,
}

impl Field {
    /// # Errors
    /// [`SimError::Setup`] when the length does not match the grid or a
    /// value is not finite.
    pub fn new(grid: Grid, t: f64, values: Vec<Complex64>) -> Result<Self, SimError> {
        if values.len() != grid.n_points {
            return Err(SimError::Setup(format!("{} values for {} grid points", values.len(), grid.n_points)));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(SimError::Setup("non-finite initial value".into()));
        }
        let mut f = Self { grid, t, values, mass0: 0.0, energy0: 0.0, absorbed: 0.0 };
        f.mass0 = f.mass();
        f.energy0 = f.energy();
        Ok(f)
    }

    /// `Σ|q|² dx`.
    pub fn mass(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx
    }

    /// `Σ(|q_x|² − |q|⁴) dx` with a spectral derivative.
    pub fn energy(&self) -> f64 {
        let n = self.grid.n_points;
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let mut buf = self.values.clone();
        fwd.process(&mut buf);
        for (v, k) in buf.iter_mut().zip(self.grid.wavenumbers()) {
            *v *= Complex64::new(0.0, k) / n as f64;
        }
        inv.process(&mut buf);
        let kinetic: f64 = buf.iter().map(|v| v.norm_sqr()).sum();
        let quartic: f64 = self.values.iter().map(|v| v.norm_sqr().powi(2)).sum();
        (kinetic - quartic) * self.grid.dx
    }

    /// Largest modulus.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `(mass + absorbed − mass₀)/mass₀`.
    pub fn mass_drift(&self) -> f64 {
        (self.mass() + self.absorbed - self.mass0) / self.mass0
    }

    /// `(energy − energy₀)/|energy₀|`.
    pub fn energy_drift(&self) -> f64 {
        (self.energy() - self.energy0) / self.energy0.abs()
    }
}

/// Smoothed indicator of `x < 0`: one for `x ≤ −w`, zero for `x ≥ 0`,
/// `cos²` in between.
pub fn step_window(x: f64, ramp_width: f64) -> f64 {
    if x >= 0.0 {
        0.0
    } else if x <= -ramp_width {
        1.0
    } else {
        (0.5 * PI * (x + ramp_width) / ramp_width).cos().powi(2)
    }
}

/// Step datum `B e^{−2iAx}·w(x)`.
///
/// # Errors
/// [`SimError::Setup`] for a negative or non-finite ramp width.
pub fn step_initial(spec: &Genus0Spectrum, grid: Grid, ramp_width: f64) -> Result<Field, SimError> {
    if !(ramp_width >= 0.0 && ramp_width.is_finite()) {
        return Err(SimError::Setup(format!("ramp_width = {ramp_width} must be >= 0")));
    }
    let values = grid
        .xs()
        .into_iter()
        .map(|x| Complex64::from_polar(spec.b * step_window(x, ramp_width), -2.0 * spec.a * x))
        .collect();
    Field::new(grid, 0.0, values)
}

/// Parameters of [`Solver`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Fraction of the domain covered by the sponge at each end.
    pub sponge_fraction: f64,
    /// Peak damping rate of the sponge.
    pub sponge_strength: f64,
    /// `max|q|` above which the run is aborted.
    pub blowup_limit: f64,
}

impl EvolveOptions {
    /// No sponge; blow-up at `10³·scale`.
    pub fn periodic(scale: f64) -> Self {
        Self { sponge_fraction: 0.0, sponge_strength: 0.0, blowup_limit: 1e3 * scale }
    }

    /// Sponge of the given fraction with the default strength.
    pub fn with_sponge(scale: f64, fraction: f64) -> Self {
        Self { sponge_fraction: fraction, sponge_strength: 5.0, blowup_limit: 1e3 * scale }
    }
}

/// Precomputed Strang stepper for one grid and time step.
pub struct Solver {
    grid: Grid,
    dt: f64,
    half_kinetic: Vec<Complex64>,
    damping: Option<Vec<f64>>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
    limit: f64,
}

impl Solver {
    /// # Errors
    /// [`SimError::Setup`] unless `0 < dt ≤ dx/10` and the sponge fits.
    pub fn new(grid: Grid, dt: f64, opts: EvolveOptions) -> Result<Self, SimError> {
        if !(dt > 0.0 && dt <= 0.1 * grid.dx * (1.0 + 1e-12)) {
            return Err(SimError::Setup(format!("dt = {dt} must lie in (0, dx/10], dx = {}", grid.dx)));
        }
        if !(0.0..0.5).contains(&opts.sponge_fraction) || opts.sponge_strength < 0.0 {
            return Err(SimError::Setup("sponge fraction must lie in [0, 0.5)".into()));
        }
        let n = grid.n_points;
        let half_kinetic = grid
            .wavenumbers()
            .into_iter()
            .map(|k| Complex64::from_polar(1.0 / n as f64, -0.5 * k * k * dt))
            .collect();
        let damping = (opts.sponge_fraction > 0.0 && opts.sponge_strength > 0.0).then(|| {
            let width = opts.sponge_fraction * (grid.x_max - grid.x_min);
            grid.xs()
                .into_iter()
                .map(|x| {
                    let depth = (grid.x_min + width - x).max(x - (grid.x_max - width)).max(0.0) / width;
                    (-opts.sponge_strength * depth.powi(4) * dt).exp()
                })
                .collect()
        });
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch = vec![Complex64::new(0.0, 0.0); fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len())];
        Ok(Self { grid, dt, half_kinetic, damping, fwd, inv, scratch, limit: opts.blowup_limit })
    }

    /// Time step.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn kinetic(&mut self, v: &mut [Complex64]) {
        self.fwd.process_with_scratch(v, &mut self.scratch);
        for (a, m) in v.iter_mut().zip(&self.half_kinetic) {
            *a *= m;
        }
        self.inv.process_with_scratch(v, &mut self.scratch);
    }

    /// Advances `field` by `n_steps` steps.
    ///
    /// # Errors
    /// [`SimError::Setup`] for a field on another grid; [`SimError::Blowup`].
    pub fn advance(&mut self, field: &mut Field, n_steps: usize) -> Result<(), SimError> {
        if field.grid != self.grid {
            return Err(SimError::Setup("field and solver grids differ".into()));
        }
        let dt = self.dt;
        let t0 = field.t;
        for step in 1..=n_steps {
            self.kinetic(&mut field.values);
            for v in field.values.iter_mut() {
                *v *= Complex64::from_polar(1.0, 2.0 * v.norm_sqr() * dt);
            }
            self.kinetic(&mut field.values);
            if let Some(d) = &self.damping {
                let mut removed = 0.0;
                for (v, f) in field.values.iter_mut().zip(d) {
                    let before = v.norm_sqr();
                    *v *= *f;
                    removed += before - v.norm_sqr();
                }
                field.absorbed += removed * self.grid.dx;
            }
            field.t = t0 + step as f64 * dt;
            let max_abs = field.max_abs();
            if !(max_abs <= self.limit) {
                return Err(SimError::Blowup { t: field.t, max_abs, limit: self.limit });
            }
        }
        Ok(())
    }
}

/// Convenience wrapper: a fresh [`Solver`] advancing `field` by `n_steps`.
///
/// # Errors
/// As [`Solver::new`] and [`Solver::advance`].
pub fn evolve(mut field: Field, dt: f64, n_steps: usize, opts: EvolveOptions) -> Result<Field, SimError> {
    Solver::new(field.grid, dt, opts)?.advance(&mut field, n_steps)?;
    Ok(field)
}

/// Matched soliton peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakMatch {
    /// Peak of `|q_total|`.
    pub x_asym: f64,
    /// Nearest peak of the numerical envelope; `None` if absent.
    pub x_num: Option<f64>,
}

impl PeakMatch {
    /// `x_num − x_asym`, NaN when unmatched.
    pub fn offset(&self) -> f64 {
        self.x_num.map_or(f64::NAN, |x| x - self.x_asym)
    }
}

/// Envelope comparison over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeComparison {
    /// Time.
    pub t: f64,
    /// Grid points in the window.
    pub xs: Vec<f64>,
    /// `|q|` from the field.
    pub abs_num: Vec<f64>,
    /// `|q_total|` from the asymptotics.
    pub abs_asym: Vec<f64>,
    /// `max |abs_num − abs_asym|`.
    pub linf_env: f64,
    /// `(Σ (abs_num − abs_asym)² dx)^{1/2}`.
    pub l2_env: f64,
    /// Soliton peaks, leading one first.
    pub peaks: Vec<PeakMatch>,
}

impl EdgeComparison {
    /// Per-peak center offsets, leading peak first.
    pub fn peak_offsets(&self) -> Vec<f64> {
        self.peaks.iter().map(PeakMatch::offset).collect()
    }
}

/// `q_total(x, t)` at each `x`.
///
/// # Errors
/// Core errors (`t ≤ 1`, quadrature).
pub fn asymptotic_profile(sd: &ScatteringData, xs: &[f64], t: f64) -> Result<Vec<Complex64>, SimError> {
    xs.iter()
        .map(|&x| {
            let edge = EdgeFrame::from_x(sd, x, t)?;
            Ok(q_total(sd, &edge)?.q_total)
        })
        .collect()
}

/// Local maxima of `y` above `floor`, refined by a parabola through the
/// three samples, ordered by decreasing `x`.
pub fn local_peaks(xs: &[f64], y: &[f64], floor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for j in (1..y.len().saturating_sub(1)).rev() {
        if y[j] > floor && y[j] >= y[j - 1] && y[j] > y[j + 1] {
            let den = y[j - 1] - 2.0 * y[j] + y[j + 1];
            let shift = if den < 0.0 { 0.5 * (y[j - 1] - y[j + 1]) / den } else { 0.0 };
            out.push(xs[j] + shift * (xs[j + 1] - xs[j]));
        }
    }
    out
}

/// Compares the field envelope with the asymptotic one on `window`.
///
/// Peaks of `|q_total|` above `B` are matched with the nearest peak of the
/// numerical envelope within half the spacing to their neighbours.
///
/// # Errors
/// Core errors from the asymptotics (`t ≤ 1`).
pub fn compare_edge(field: &Field, sd: &ScatteringData, window: (f64, f64)) -> Result<EdgeComparison, SimError> {
    let idx: Vec<usize> = (0..field.grid.n_points)
        .filter(|&j| (window.0..=window.1).contains(&field.grid.x(j)))
        .collect();
    let xs: Vec<f64> = idx.iter().map(|&j| field.grid.x(j)).collect();
    let abs_num: Vec<f64> = idx.iter().map(|&j| field.values[j].norm()).collect();
    let abs_asym: Vec<f64> = asymptotic_profile(sd, &xs, field.t)?.iter().map(|v| v.norm()).collect();
    let diff = abs_num.iter().zip(&abs_asym).map(|(a, b)| (a - b).abs());
    let linf_env = diff.clone().fold(0.0, f64::max);
    let l2_env = (diff.map(|d| d * d).sum::<f64>() * field.grid.dx).sqrt();
    let asym_peaks = local_peaks(&xs, &abs_asym, sd.spec.b);
    let num_peaks = local_peaks(&xs, &abs_num, 0.0);
    let peaks = asym_peaks
        .iter()
        .enumerate()
        .map(|(i, &xa)| {
            let gap = |j: Option<&f64>| j.map_or(f64::INFINITY, |&xb: &f64| (xa - xb).abs());
            let reach = 0.5 * gap(i.checked_sub(1).and_then(|k| asym_peaks.get(k))).min(gap(asym_peaks.get(i + 1)));
            let reach = if reach.is_finite() { reach } else { 2.0 / sd.spec.b };
            let x_num = num_peaks
                .iter()
                .copied()
                .filter(|xn| (xn - xa).abs() <= reach)
                .min_by(|a, b| (a - xa).abs().total_cmp(&(b - xa).abs()));
            PeakMatch { x_asym: xa, x_num }
        })
        .collect();
    Ok(EdgeComparison { t: field.t, xs, abs_num, abs_asym, linf_env, l2_env, peaks })
}

/// Field equal to `q_total` on `window` and zero elsewhere; compares to
/// itself with zero discrepancy.
///
/// # Errors
/// As [`asymptotic_profile`].
pub fn asymptotic_field(sd: &ScatteringData, grid: Grid, t: f64, window: (f64, f64)) -> Result<Field, SimError> {
    let xs = grid.xs();
    let inside: Vec<f64> = xs.iter().copied().filter(|x| (window.0..=window.1).contains(x)).collect();
    let mut vals = asymptotic_profile(sd, &inside, t)?.into_iter();
    let values = xs
        .iter()
        .map(|x| if (window.0..=window.1).contains(x) { vals.next().unwrap_or_default() } else { Complex64::default() })
        .collect();
    Field::new(grid, t, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sech(x: f64) -> f64 {
        1.0 / x.cosh()
    }

    #[test]
    fn grid_rules() {
        assert!(Grid::new(0.0, 1.0, 12).is_err());
        assert!(Grid::new(1.0, 0.0, 16).is_err());
        let g = Grid::with_spacing(-10.0, 10.0, 0.3).unwrap();
        assert_eq!(g.n_points, 128);
        assert!(g.dx <= 0.3);
        let k = g.wavenumbers();
        assert_eq!(k[0], 0.0);
        assert!(k[64] < 0.0);
    }

    #[test]
    fn step_values() {
        let spec = Genus0Spectrum::new(-1.0, 0.5).unwrap();
        let g = Grid::new(-8.0, 8.0, 16).unwrap();
        let f = step_initial(&spec, g, 0.0).unwrap();
        assert_eq!(f.values[9], Complex64::new(0.0, 0.0)); // x = 1
        let a = spec.a;
        let expect = Complex64::from_polar(0.5, 2.0 * a); // B e^{2iA}
        assert!((f.values[7] - expect).norm() < 1e-15); // x = −1
        assert!((f.mass() - 0.25 * 8.0).abs() < 1e-12);
    }

    #[test]
    fn ramp_mass() {
        let spec = Genus0Spectrum::new(0.3, 1.0).unwrap();
        let g = Grid::new(-20.0, 20.0, 4096).unwrap();
        let r = 2.0;
        let f = step_initial(&spec, g, r).unwrap();
        // ∫ of cos⁴ over the ramp is 3r/8
        assert!((f.mass() - (20.0 - r + 3.0 * r / 8.0)).abs() <= g.dx);
    }

    #[test]
    fn zero_stays_zero() {
        let g = Grid::new(-5.0, 5.0, 64).unwrap();
        let f = Field::new(g, 0.0, vec![Complex64::default(); 64]).unwrap();
        let f = evolve(f, 0.01, 10, EvolveOptions::periodic(1.0)).unwrap();
        assert!(f.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn plane_wave_rotates() {
        let b = 0.7;
        let g = Grid::new(-4.0, 4.0, 64).unwrap();
        let f = Field::new(g, 0.0, vec![Complex64::new(b, 0.0); 64]).unwrap();
        let dt = 0.01;
        let f = evolve(f, dt, 100, EvolveOptions::periodic(b)).unwrap();
        let expect = Complex64::from_polar(b, 2.0 * b * b * f.t);
        assert!(f.values.iter().all(|v| (v - expect).norm() < 1e-8));
    }

    #[test]
    fn soliton_short_run() {
        let g = Grid::new(-25.6, 25.6, 1024).unwrap();
        let vals = g.xs().iter().map(|&x| Complex64::new(sech(x), 0.0)).collect();
        let f = Field::new(g, 0.0, vals).unwrap();
        let f = evolve(f, 0.002, 100, EvolveOptions::periodic(1.0)).unwrap();
        let err = g.xs().iter().zip(&f.values).map(|(&x, v)| (v.norm() - sech(x)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-6, "{err}");
        assert!(f.mass_drift().abs() < 1e-12);
    }

    #[test]
    fn blowup_detected() {
        let g = Grid::new(-4.0, 4.0, 64).unwrap();
        let f = Field::new(g, 0.0, vec![Complex64::new(2.0, 0.0); 64]).unwrap();
        let opts = EvolveOptions { blowup_limit: 1.0, ..EvolveOptions::periodic(1.0) };
        assert!(matches!(evolve(f, 0.01, 1, opts), Err(SimError::Blowup { .. })));
    }

    #[test]
    fn dt_bound_enforced() {
        let g = Grid::new(-4.0, 4.0, 64).unwrap();
        assert!(Solver::new(g, 0.2 * g.dx, EvolveOptions::periodic(1.0)).is_err());
    }

    #[test]
    fn sponge_accounts_for_mass() {
        let g = Grid::new(-10.0, 10.0, 256).unwrap();
        let vals = g.xs().iter().map(|&x| Complex64::from_polar(sech(x - 6.0), 2.0 * x)).collect();
        let f = Field::new(g, 0.0, vals).unwrap();
        let f = evolve(f, 0.005, 400, EvolveOptions::with_sponge(1.0, 0.1)).unwrap();
        assert!(f.absorbed > 0.1);
        assert!(f.mass_drift().abs() < 1e-10);
    }

    #[test]
    fn peaks_are_refined() {
        let xs: Vec<f64> = (0..200).map(|j| j as f64 * 0.1).collect();
        let y: Vec<f64> = xs.iter().map(|x| sech(x - 5.33) + 0.5 * sech(x - 15.0)).collect();
        let p = local_peaks(&xs, &y, 0.2);
        assert_eq!(p.len(), 2);
        assert!((p[0] - 15.0).abs() < 1e-3 && (p[1] - 5.33).abs() < 1e-3);
    }
}
