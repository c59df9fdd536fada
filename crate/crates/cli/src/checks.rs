//! Residual suites over the core library.
//!
//! Each suite returns one [`Row`] per measured residual. Sample points are
//! fixed lists or Halton sequences, so tables are reproducible.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use dsw_edge_core::edge_asymptotics::{
    q_par_cos_form, q_par_tanh_form, q_total, refinement_coeffs, refinement_coeffs_with_index, soliton_center,
    soliton_term, Scheme,
};
use dsw_edge_core::parametrix::{
    laguerre_expansion_coeffs, laguerre_l, pc_asymptotic, pc_p, pc_psi_half, pc_ray_jump, PCParams, RaySide,
};
use dsw_edge_core::scattering::{
    chi_fn, delta_boundary, delta_fn, reflection, reflection_abs2, scattering_ab, EdgeFrame, ScatteringData,
};
use dsw_edge_core::specfun::{
    gamma_complex, integrate_to_infinity, laguerre_monic, laguerre_norm, parabolic_cylinder_d, AxisSide, Point,
    QuadratureSpec,
};
use dsw_edge_core::spectrum::{
    baker_akhiezer_phi, baker_akhiezer_phi_side, lax_q, lax_q_tilde, q_plane_wave, q_plane_wave_x, BranchSide,
    Genus0Spectrum,
};
use dsw_edge_core::{Complex64, Matrix2};

use crate::error::Result;
use crate::output::Table;

/// One measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// Suite name.
    pub suite: &'static str,
    /// Test name.
    pub test: &'static str,
    /// Where it was measured.
    pub location: String,
    /// Measured value.
    pub residual: f64,
    /// Bound.
    pub tolerance: f64,
}

impl Row {
    fn new(suite: &'static str, test: &'static str, location: String, residual: f64, tolerance: f64) -> Self {
        Self { suite, test, location, residual, tolerance }
    }

    /// `residual ≤ tolerance`; NaN fails.
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Rows as an output table.
pub fn table(rows: &[Row]) -> Table {
    let mut t = Table::new(&["suite", "test", "location", "residual", "tolerance", "pass"]);
    for r in rows {
        t.push(vec![r.suite.into(), r.test.into(), r.location.clone().into(), r.residual.into(), r.tolerance.into(), r.pass().into()]);
    }
    t
}

/// Worst row by `residual/tolerance`.
pub fn worst(rows: &[Row]) -> Option<&Row> {
    rows.iter().max_by(|a, b| {
        let q = |r: &Row| if r.pass() { r.residual / r.tolerance } else { f64::INFINITY };
        q(a).total_cmp(&q(b))
    })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Radical inverse of `i` in `base`.
fn halton(mut i: u32, base: u32) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while i > 0 {
        f /= f64::from(base);
        r += f * f64::from(i % base);
        i /= base;
    }
    r
}

fn laguerre_weight(s: f64) -> Complex64 {
    c(s.sqrt() * (-s).exp(), 0.0)
}

/// Laguerre jump `L₋ = L₊J_L` for `n ≤ 5` on ten points of `(0, 30]`.
/// With `inject_fault` the sign of the jump entry is flipped.
///
/// # Errors
/// Core quadrature failures.
pub fn laguerre_jump_suite(q: &QuadratureSpec, inject_fault: bool) -> Result<Vec<Row>> {
    let start = Instant::now();
    let sign = if inject_fault { 1.0 } else { -1.0 };
    let mut rows = Vec::new();
    for n in 0..=5u32 {
        for j in 1..=10 {
            let s = 0.3 * f64::from(j * j);
            let up = laguerre_l(n, Point::Boundary(s, AxisSide::Above), q)?;
            let dn = laguerre_l(n, Point::Boundary(s, AxisSide::Below), q)?;
            let res = (dn - up * Matrix2::lower(laguerre_weight(s) * sign)).max_abs() / up.max_abs().max(1.0);
            rows.push(Row::new("laguerre", "jump", format!("n={n} s={s}"), res, 1e-8));
        }
    }
    rows.push(Row::new("laguerre", "runtime_s", "all".into(), start.elapsed().as_secs_f64(), 30.0));
    Ok(rows)
}

/// `ζ^{nσ₃}`.
fn zeta_power(n: u32, z: Complex64) -> Matrix2 {
    let p = z.powi(n as i32);
    Matrix2::diag(p, p.inv())
}

/// Mean of `ζ(Lζ^{nσ₃} − I)` over eight points of `|ζ| = r`; the mean
/// cancels the `ζ^{−2}, …, ζ^{−8}` terms.
fn fitted_m1(n: u32, r: f64, q: &QuadratureSpec) -> Result<Matrix2> {
    let mut acc = Matrix2::zero();
    for j in 0..8 {
        let z = Complex64::from_polar(r, PI / 8.0 + PI * f64::from(j) / 4.0);
        let m = laguerre_l(n, Point::Off(z), q)? * zeta_power(n, z) - Matrix2::identity();
        acc = acc + m.scale(z);
    }
    Ok(acc.scale(c(0.125, 0.0)))
}

/// Fitted `1/ζ` coefficients of `L` and the decay of the `R₁`-corrected
/// (2,1) entry.
///
/// # Errors
/// Core quadrature failures.
pub fn laguerre_asymptotics_suite(q: &QuadratureSpec) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1.0);
    for n in 0..=5u32 {
        let co = laguerre_expansion_coeffs(n);
        let d = c(co.diag, 0.0);
        for r in [1e3, 1e4] {
            let m1 = fitted_m1(n, r, q)?;
            let loc = format!("n={n} |zeta|={r}");
            rows.push(Row::new("laguerre_asymp", "m1_11", loc.clone(), rel(m1.m11, d), 1e-5));
            rows.push(Row::new("laguerre_asymp", "m1_22", loc.clone(), rel(m1.m22, -d), 1e-5));
            rows.push(Row::new("laguerre_asymp", "m1_21", loc.clone(), (m1.m21 - co.off21).norm() / co.off21.norm(), 1e-5));
            if n > 0 {
                rows.push(Row::new("laguerre_asymp", "m1_12", loc, (m1.m12 - co.off12).norm() / co.off12.norm(), 1e-5));
            }
        }
        let corrected = |z: Complex64| -> Result<f64> {
            let l = laguerre_l(n, Point::Off(z), q)? * zeta_power(n, z);
            Ok((co.r1 / z * l.m11 + l.m21).norm())
        };
        let slope = (corrected(c(0.0, 1e4))? / corrected(c(0.0, 1e3))?).ln() / 10f64.ln();
        rows.push(Row::new("laguerre_asymp", "r1_slope_plus_2", format!("n={n}"), (slope + 2.0).abs(), 0.05));
    }
    Ok(rows)
}

/// `r₀` values of the parabolic-cylinder suite.
pub const PC_R0: [(f64, f64); 3] = [(0.2, -0.35), (-0.55, 0.1), (0.05, 0.8)];

/// Parabolic-cylinder model: `Ψ` jump on the real line, the four ray
/// jumps of `P_PC`, decay of the first-order remainder, `β₁β₂ = ν`.
///
/// # Errors
/// Core errors.
pub fn parabolic_suite() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (re, im) in PC_R0 {
        let r0 = c(re, im);
        let p = PCParams::new(r0, r0.conj())?;
        let tag = format!("r0={re}{im:+}i");
        let j = Matrix2::new(c(1.0, 0.0), -p.rho0, -p.r0, p.r0 * p.rho0 + 1.0);
        for x in [-5.0, -3.7, -2.1, -1.0, -0.3, 0.3, 1.0, 2.1, 3.7, 5.0] {
            let lam = c(x, 0.0);
            let e = Matrix2::exp_sigma3(-c(0.0, 1.0) * lam * lam);
            let up = pc_psi_half(&p, lam, true) * e;
            let dn = pc_psi_half(&p, lam, false) * e;
            let res = (dn - up * j).max_abs() / up.max_abs().max(1.0);
            rows.push(Row::new("parabolic", "psi_jump", format!("{tag} lambda={x}"), res, 1e-8));
        }
        for angle in [FRAC_PI_4, -FRAC_PI_4, 3.0 * FRAC_PI_4, -3.0 * FRAC_PI_4] {
            for r in [0.5, 2.0, 5.0] {
                let lam = Complex64::from_polar(r, angle);
                let plus = pc_p(&p, lam, Some(RaySide::Plus))?;
                let minus = pc_p(&p, lam, Some(RaySide::Minus))?;
                let res = (minus - plus * pc_ray_jump(&p, lam, angle)?).max_abs() / plus.max_abs().max(1.0);
                rows.push(Row::new("parabolic", "ray_jump", format!("{tag} angle={angle:.6} r={r}"), res, 1e-8));
            }
        }
        for th in [PI / 8.0, PI / 2.0, 7.0 * PI / 8.0, -PI / 8.0, -PI / 2.0, -7.0 * PI / 8.0] {
            let err = |r: f64| -> Result<f64> {
                let lam = Complex64::from_polar(r, th);
                Ok((pc_p(&p, lam, None)? - pc_asymptotic(&p, lam, 1)).max_abs())
            };
            let slope = (err(1000.0)? / err(100.0)?).ln() / 10f64.ln();
            rows.push(Row::new("parabolic", "asymp_slope_plus_2", format!("{tag} theta={th:.6}"), (slope + 2.0).abs(), 0.05));
        }
        rows.push(Row::new("parabolic", "beta1_beta2_minus_nu", tag, (p.beta1 * p.beta2 - p.nu).norm(), 1e-10));
    }
    Ok(rows)
}

/// `D_a` recurrence, derivative and connection residuals; Laguerre
/// orthogonality; `|Γ(iν)|²ν sinh(πν)/π = 1`.
///
/// # Errors
/// Core errors.
pub fn specfun_suite(q: &QuadratureSpec) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let i = c(0.0, 1.0);
    let orders = [c(-1.2, 0.3), c(0.4, -0.7), c(0.9, 0.5), c(-0.3, 0.2)];
    for a in orders {
        for r in [0.5, 3.0, 7.0, 11.0, 13.5] {
            for th in [-2.7, -1.2, 0.4, 1.9, 3.0] {
                let z = Complex64::from_polar(r, th);
                let loc = format!("a={a} z={z:.6}");
                let d = |a: Complex64| parabolic_cylinder_d(a, z);
                let scale = d(a + 1.0).norm() + (z * d(a)).norm() + (a * d(a - 1.0)).norm();
                let res = (d(a + 1.0) - z * d(a) + a * d(a - 1.0)).norm() / scale;
                rows.push(Row::new("specfun", "d_recurrence", loc.clone(), res, 1e-8));

                let h = 1e-3;
                let f = |z: Complex64| parabolic_cylinder_d(a, z);
                let fd = (f(z - 2.0 * h) - f(z + 2.0 * h) + 8.0 * (f(z + h) - f(z - h))) / (12.0 * h);
                let exact = z * 0.5 * f(z) - d(a + 1.0);
                let scale = (z * 0.5 * f(z)).norm() + d(a + 1.0).norm();
                rows.push(Row::new("specfun", "d_derivative", loc.clone(), (fd - exact).norm() / scale, 1e-8));

                let b = -a - 1.0;
                let pre = gamma_complex(a + 1.0)? / (2.0 * PI).sqrt();
                let t1 = pre * (i * PI * a / 2.0).exp() * parabolic_cylinder_d(b, i * z);
                let t2 = pre * (-i * PI * a / 2.0).exp() * parabolic_cylinder_d(b, -i * z);
                let lhs = f(z);
                let res = (lhs - t1 - t2).norm() / (lhs.norm() + t1.norm() + t2.norm());
                rows.push(Row::new("specfun", "d_connection", loc, res, 1e-8));
            }
        }
    }
    for n in 0..=6u32 {
        for m in 0..=n {
            let v = integrate_to_infinity(
                |s| laguerre_monic(n, c(s, 0.0)) * laguerre_monic(m, c(s, 0.0)) * laguerre_weight(s),
                0.0,
                &[],
                q,
            )?;
            let expect = if n == m { laguerre_norm(n) } else { 0.0 };
            let res = (v - expect).norm() / (laguerre_norm(n) * laguerre_norm(m)).sqrt();
            rows.push(Row::new("specfun", "laguerre_orthogonality", format!("n={n} m={m}"), res, 1e-8));
        }
    }
    for nu in [0.05, 0.5, 2.0] {
        let g = gamma_complex(c(0.0, nu))?;
        let res = (g.norm_sqr() * nu * (PI * nu).sinh() / PI - 1.0).abs();
        rows.push(Row::new("specfun", "gamma_imag_axis", format!("nu={nu}"), res, 1e-10));
    }
    Ok(rows)
}

fn fd5<F: Fn(f64) -> Result<Matrix2>>(f: F, x: f64, h: f64) -> Result<Matrix2> {
    let w = |s: f64| c(s / (12.0 * h), 0.0);
    Ok(f(x - 2.0 * h)? * w(1.0) - f(x - h)? * w(8.0) + f(x + h)? * w(8.0) - f(x + 2.0 * h)? * w(1.0))
}

/// Backgrounds sampled by the spectral and scalar suites.
const SPECS: [(f64, f64); 3] = [(-1.0, 0.5), (0.3, 1.2), (1.5, 0.4)];

/// Plane-wave eigenfunctions: unimodularity, both Lax equations, the cut
/// jump, `a² − b² = 1` and the Schwarz symmetries.
///
/// # Errors
/// Core errors.
pub fn spectral_suite() -> Result<Vec<Row>> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let i = c(0.0, 1.0);
    let sigma2 = Matrix2::new(c(0.0, 0.0), -i, i, c(0.0, 0.0));
    let sig3 = Matrix2::sigma3();
    for (a, b) in SPECS {
        let s = Genus0Spectrum::new(a, b)?;
        for j in 1..=12u32 {
            let dx = 6.0 * halton(j, 2) - 3.0;
            let dx = if dx.abs() < 0.05 { 0.05f64.copysign(dx) } else { dx };
            let k = c(a + dx, 6.0 * halton(j, 3) - 3.0);
            let x = 4.0 * halton(j, 5) - 2.0;
            let t = halton(j, 7);
            let loc = format!("A={a} B={b} k={k:.6} x={x:.6} t={t:.6}");
            let phi = baker_akhiezer_phi(&s, x, t, k)?;
            rows.push(Row::new("spectral", "det_one", loc.clone(), (phi.det() - 1.0).norm(), 1e-12));

            let h = 1e-3;
            let scale = phi.max_abs();
            let q = q_plane_wave(&s, x, t);
            let phi_x = fd5(|xx| Ok(baker_akhiezer_phi(&s, xx, t, k)?), x, h)?;
            let rx = phi_x + sig3 * phi * (i * k) - lax_q(q) * phi;
            rows.push(Row::new("spectral", "lax_x", loc.clone(), rx.max_abs() / (scale * (1.0 + k.norm())), 1e-6));
            let phi_t = fd5(|tt| Ok(baker_akhiezer_phi(&s, x, tt, k)?), t, h)?;
            let rt = phi_t + sig3 * phi * (i * k * k * 2.0) - lax_q_tilde(q, q_plane_wave_x(&s, x, t), k) * phi;
            rows.push(Row::new("spectral", "lax_t", loc.clone(), rt.max_abs() / (scale * (1.0 + k.norm()).powi(2)), 1e-6));

            let (sa, sb) = scattering_ab(&s, k, None)?;
            rows.push(Row::new("spectral", "a2_minus_b2", loc.clone(), (sa * sa - sb * sb - 1.0).norm(), 1e-12));
            let (ac, bc) = scattering_ab(&s, k.conj(), None)?;
            let sym = (ac - sa.conj()).norm().max((bc + sb.conj()).norm());
            let pc = baker_akhiezer_phi(&s, x, t, k.conj())?;
            let sym_phi = (pc - sigma2 * phi.conj() * sigma2).max_abs() / scale;
            rows.push(Row::new("spectral", "schwarz", loc, sym.max(sym_phi), 1e-12));

            let frac = 1.9 * halton(j, 11) - 0.95;
            let kc = c(a, frac * b);
            let plus = baker_akhiezer_phi_side(&s, x, t, kc, Some(BranchSide::Plus))?;
            let minus = baker_akhiezer_phi_side(&s, x, t, kc, Some(BranchSide::Minus))?;
            let j0 = Matrix2::new(c(0.0, 0.0), i, i, c(0.0, 0.0));
            rows.push(Row::new("spectral", "cut_jump", format!("A={a} B={b} k={kc:.6}"), (minus - plus * j0).max_abs(), 1e-10));
        }
        for x in [-3.0, -0.7, 0.4, 2.5] {
            let r = reflection(&s, c(a + x, 0.0), None)?;
            rows.push(Row::new("spectral", "real_r_imaginary", format!("A={a} B={b} k={}", a + x), r.re.abs(), 1e-12));
        }
    }
    rows.push(Row::new("spectral", "runtime_s", "all".into(), start.elapsed().as_secs_f64(), 10.0));
    Ok(rows)
}

/// `δ` jump and reflection symmetry; `χ` independence of the cut length.
///
/// # Errors
/// Core errors.
pub fn scalar_suite(q: &QuadratureSpec) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (a, b) in SPECS {
        let s = Genus0Spectrum::new(a, b)?;
        for j in 1..=6u32 {
            let k0 = a + 2.0 * halton(j, 2) - 1.0;
            let x = k0 - 0.05 - 2.9 * halton(j, 3);
            let loc = format!("A={a} B={b} k0={k0:.6}");
            if (x - a).abs() > 1e-3 {
                let up = delta_boundary(&s, x, AxisSide::Above, k0, q)?;
                let dn = delta_boundary(&s, x, AxisSide::Below, k0, q)?;
                let res = (up / dn - (1.0 + reflection_abs2(&s, x))).norm();
                rows.push(Row::new("scalar", "delta_jump", format!("{loc} s={x:.6}"), res, 1e-8));
            }
            let k = c(6.0 * halton(j, 5) - 3.0, 0.05 + 2.95 * halton(j, 7));
            let d = delta_fn(&s, k, k0, q)?;
            let dc = delta_fn(&s, k.conj(), k0, q)?;
            rows.push(Row::new("scalar", "delta_symmetry", format!("{loc} k={k:.6}"), (dc.conj() * d - 1.0).norm(), 1e-8));
            let base = chi_fn(&s, k0, 5.0, q)?;
            let spread = [20.0, 50.0]
                .into_iter()
                .map(|n| Ok((chi_fn(&s, k0, n, q)? - base).norm()))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            rows.push(Row::new("scalar", "chi_cut_independence", loc, spread, 1e-8));
        }
    }
    Ok(rows)
}

/// Refinement coefficients: back-substitution, symmetries, combination
/// identities, and the scheme shift at the documented points.
///
/// # Errors
/// Core errors.
pub fn refinement_suite(sd: &ScatteringData) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for rho in [0.3, 0.7, 1.0, 1.6, 2.0, 2.9] {
        for t in [1e2, 1e3, 1e4] {
            let edge = EdgeFrame::new(sd, rho, t)?;
            for scheme in [Scheme::First, Scheme::Second] {
                let rc = refinement_coeffs(sd, &edge, scheme)?;
                let loc = format!("{scheme:?} rho={rho} t={t}");
                let sys = rc.system_residuals().iter().map(|r| r.norm()).fold(0.0, f64::max);
                rows.push(Row::new("refinement", "system_backsub", loc.clone(), sys, 1e-12));
                let hd = (rc.h_d.conj() + rc.h).norm() / rc.h.norm().max(1.0);
                rows.push(Row::new("refinement", "conj_hd_plus_h", loc.clone(), hd, 1e-12));
                let comb = rc.ab_comb_residuals().iter().map(|r| r.norm()).fold(0.0, f64::max);
                rows.push(Row::new("refinement", "ab_comb", loc, comb, 1e-10));
            }
        }
    }
    let documented = ScatteringData::new(Genus0Spectrum::new(-1.0, 0.5)?, sd.quad)?;
    for rho in [1.0, 2.0] {
        for t in [1e3, 1e4] {
            let edge = EdgeFrame::new(&documented, rho, t)?;
            let second = refinement_coeffs(&documented, &edge, Scheme::Second)?;
            let first = refinement_coeffs_with_index(&documented, &edge, Scheme::First, second.n - 1)?;
            let res = (second.q_inf() - first.q_inf()).norm();
            rows.push(Row::new("refinement", "scheme_shift", format!("A=-1 B=0.5 rho={rho} t={t} n={}", second.n), res, 1e-12));
        }
    }
    Ok(rows)
}

/// Agreement of the oscillatory term with its `cosh` and `tanh` forms at
/// 20 sampled `(ρ, t)`, and the soliton peak height `2B`.
///
/// # Errors
/// Core errors.
pub fn closed_form_suite(sd: &ScatteringData) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for j in 1..=20u32 {
        let rho = 4.0 * halton(j, 2);
        let t = 10f64.powf(0.5 + 3.5 * halton(j, 3));
        let edge = EdgeFrame::new(sd, rho, t)?;
        let res = q_total(sd, &edge)?;
        let sol = edge.n.map(|n| soliton_term(sd, edge.x, t, n));
        let d = (q_par_cos_form(&edge, sol.as_ref()) - res.q_par)
            .norm()
            .max((q_par_tanh_form(&edge, sol.as_ref()) - res.q_par).norm());
        rows.push(Row::new("closed_forms", "q_par_forms", format!("rho={rho:.6} t={t:.6}"), d, 1e-12));
    }
    for n in 0..4u32 {
        for t in [20.0, 1e3, 1e5] {
            let x = soliton_center(sd, t, n);
            let s = soliton_term(sd, x, t, n);
            let res = (s.q.norm() - 2.0 * sd.spec.b).abs();
            rows.push(Row::new("closed_forms", "peak_is_2b", format!("n={n} t={t} x={x:.6}"), res, 1e-10));
        }
    }
    Ok(rows)
}

/// All suites in order. `sd` drives the refinement and form suites.
///
/// # Errors
/// Core errors.
pub fn run_all(sd: &ScatteringData, inject_fault: bool) -> Result<Vec<Row>> {
    let q = &sd.quad;
    let mut rows = laguerre_jump_suite(q, inject_fault)?;
    rows.extend(laguerre_asymptotics_suite(q)?);
    rows.extend(parabolic_suite()?);
    rows.extend(specfun_suite(q)?);
    rows.extend(spectral_suite()?);
    rows.extend(scalar_suite(q)?);
    rows.extend(refinement_suite(sd)?);
    rows.extend(closed_form_suite(sd)?);
    Ok(rows)
}
