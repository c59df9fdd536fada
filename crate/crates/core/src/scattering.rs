//! Scattering data of the step and the scalar functions of the steepest
//! descent analysis.
//!
//! For the pure step the spectral functions are elementary:
//! `a = (κ₀ + κ₀⁻¹)/2`, `b = (κ₀ − κ₀⁻¹)/2`, hence `r = (κ₀² − 1)/(κ₀² + 1)`
//! and, on the band, `f = r₋ − r₊ = 4κ₊²/(κ₊⁴ − 1)`. On the real line `r` is
//! purely imaginary and
//!
//! ```text
//! |r(s)|² = B² / (d + √(d² + B²))²,   d = |s − A|,
//! ```
//!
//! so `ln(1 + |r|²)` is continuous with a kink at `s = A`, where `|r| = 1`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::matrix::Matrix2;
use crate::prelude::*;
use crate::specfun::{
    cauchy_interval, gamma_complex, integrate_from_neg_infinity, integrate_panels, AxisSide, Point,
    QuadratureSpec,
};
use crate::spectrum::{kappa0, BranchSide, Genus0Spectrum};

/// Richardson table depth for `φ̂(E₀)`.
const PHI_HAT_TERMS: usize = 6;
/// First step of the geometric sequence `ε_j = 10⁻²·2^{−j}`.
const PHI_HAT_EPS0: f64 = 1e-2;
/// Largest admissible spread of the last two extrapolants.
const PHI_HAT_SPREAD: f64 = 1e-6;

/// `(a(k), b(k))`.
///
/// # Errors
/// [`Error::Branch`] on the band without a side, [`Error::Endpoint`] near
/// `E₀`, `Ē₀`.
pub fn scattering_ab(spec: &Genus0Spectrum, k: Complex64, side: Option<BranchSide>) -> Result<(Complex64, Complex64)> {
    let kap = kappa0(spec, k, side)?;
    Ok(((kap + kap.inv()) * 0.5, (kap - kap.inv()) * 0.5))
}

/// `r(k) = b(k)/a(k)`.
///
/// # Errors
/// As [`scattering_ab`].
pub fn reflection(spec: &Genus0Spectrum, k: Complex64, side: Option<BranchSide>) -> Result<Complex64> {
    let k2 = kappa0(spec, k, side)?.powi(2);
    Ok((k2 - 1.0) / (k2 + 1.0))
}

/// `f(k) = r₋(k) − r₊(k)` at an interior band point.
///
/// # Errors
/// [`Error::Domain`] off the band, [`Error::Endpoint`] near its ends.
pub fn f_jump(spec: &Genus0Spectrum, k: Complex64) -> Result<Complex64> {
    if !spec.on_cut(k) {
        return Err(Error::Domain("f is defined on the band only"));
    }
    let k2 = kappa0(spec, k, Some(BranchSide::Plus))?.powi(2);
    Ok(k2 * 4.0 / (k2 * k2 - 1.0))
}

/// `φ̂(E₀) = lim_{ε↓0} f(E₀ − iε) e^{iπ/4}/√ε`, extrapolated by Richardson
/// in powers of `√ε`.
///
/// # Errors
/// [`Error::Convergence`] when the last two extrapolants differ by more
/// than `1e-6`.
pub fn phi_hat_e0(spec: &Genus0Spectrum) -> Result<Complex64> {
    let rot = Complex64::from_polar(1.0, FRAC_PI_4);
    let mut table = [[ZERO; PHI_HAT_TERMS]; PHI_HAT_TERMS];
    for j in 0..PHI_HAT_TERMS {
        let eps = PHI_HAT_EPS0 * 0.5f64.powi(j as i32);
        table[j][0] = f_jump(spec, spec.e0() - I * eps)? * rot / eps.sqrt();
        for m in 1..=j {
            let factor = 2f64.powf(0.5 * m as f64) - 1.0;
            table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / factor;
        }
    }
    let last = PHI_HAT_TERMS - 1;
    let best = table[last][last];
    let spread = (best - table[last - 1][last - 1]).norm();
    if !(spread <= PHI_HAT_SPREAD) {
        return Err(Error::Convergence { spread });
    }
    Ok(best)
}

/// Closed form `φ̂(E₀) = 4e^{3πi/4}/√(2B)` of the limit computed by
/// [`phi_hat_e0`].
pub fn phi_hat_e0_exact(spec: &Genus0Spectrum) -> Complex64 {
    Complex64::from_polar(4.0 / (2.0 * spec.b).sqrt(), 3.0 * FRAC_PI_4)
}

/// `|r(s)|²` for real `s`, in closed form.
pub fn reflection_abs2(spec: &Genus0Spectrum, s: f64) -> f64 {
    let d = (s - spec.a).abs();
    let den = d + d.hypot(spec.b);
    (spec.b / den).powi(2)
}

/// `ln(1 + |r(s)|²)`.
pub fn log_weight(spec: &Genus0Spectrum, s: f64) -> f64 {
    reflection_abs2(spec, s).ln_1p()
}

/// `ν(k₀) = ln(1 + |r(k₀)|²)/(2π)`; continuous through `k₀ = A`.
pub fn nu_of(spec: &Genus0Spectrum, k0: f64) -> f64 {
    log_weight(spec, k0) / (2.0 * PI)
}

/// Whether `k₀` coincides with the band crossing `A` to rounding.
pub fn at_band_crossing(spec: &Genus0Spectrum, k0: f64) -> bool {
    (k0 - spec.a).abs() <= 8.0 * f64::EPSILON * (1.0 + spec.a.abs())
}

/// `arg r(k₀)` on the real line together with its ambiguity.
///
/// Off `A` the reflection coefficient is `−i|r|` to the right and `+i|r|` to
/// the left. At `A` itself the right-hand limit is returned and the
/// ambiguity is `π`, the jump of the argument across the band.
pub fn arg_reflection_real(spec: &Genus0Spectrum, k0: f64) -> (f64, f64) {
    if at_band_crossing(spec, k0) {
        (-FRAC_PI_2, PI)
    } else if k0 > spec.a {
        (-FRAC_PI_2, 0.0)
    } else {
        (FRAC_PI_2, 0.0)
    }
}

/// `δ(ζ) = exp[(1/2πi)∫_{−∞}^{k₀} w(s)/(s − ζ) ds]` for an arbitrary weight
/// `w` with kinks at `breaks`.
///
/// # Errors
/// [`Error::Domain`] on `(−∞, k₀]` without a side, [`Error::Quadrature`].
pub fn delta_with_weight<W: Fn(f64) -> f64>(
    w: W,
    breaks: &[f64],
    p: Point,
    k0: f64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    let z = p.z();
    if let Point::Boundary(s, _) = p {
        if s >= k0 {
            return Err(Error::Domain("boundary value of delta requested off its contour"));
        }
    }
    let lo = breaks.iter().fold(z.re.min(k0), |m, &b| m.min(b)) - 2.0;
    let tail = integrate_from_neg_infinity(|s| cr(w(s)) / (s - z), lo, &[], q)?;
    let window = cauchy_interval(|s| cr(w(s)), lo, k0, breaks, p, q)?;
    Ok((tail / (2.0 * PI * I) + window).exp())
}

/// `χ(k₀) = (k₀+N)^{iν} exp[(1/2πi)(∫_{−N}^{k₀}(w(s)−w(k₀))/(s−k₀) ds +
/// ∫_{−∞}^{−N} w(s)/(s−k₀) ds)]` for an arbitrary weight.
///
/// # Errors
/// [`Error::Domain`] unless `−N < k₀`, [`Error::Quadrature`].
pub fn chi_with_weight<W: Fn(f64) -> f64>(
    w: W,
    breaks: &[f64],
    k0: f64,
    n_cut: f64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    if !(-n_cut < k0) {
        return Err(Error::Domain("chi requires -N < k0"));
    }
    let w0 = w(k0);
    let nu = w0 / (2.0 * PI);
    // Breaks within rounding of k0 would leave a panel too thin to sample.
    let gap = 64.0 * f64::EPSILON * (1.0 + k0.abs());
    let mut pts: alloc::vec::Vec<f64> = breaks.iter().copied().filter(|&b| b > -n_cut && b < k0 - gap).collect();
    pts.push(-n_cut);
    pts.push(k0);
    pts.sort_by(f64::total_cmp);
    let near = integrate_panels(|s| if s == k0 { ZERO } else { cr((w(s) - w0) / (s - k0)) }, &pts, q)?;
    let far = integrate_from_neg_infinity(|s| cr(w(s) / (s - k0)), -n_cut, &[], q)?;
    let exponent = I * nu * (k0 + n_cut).ln() + (near + far) / (2.0 * PI * I);
    Ok(exponent.exp())
}

/// `δ(k, ξ)` with `k₀ = −ξ` for the step weight.
///
/// # Errors
/// As [`delta_with_weight`].
pub fn delta_fn(spec: &Genus0Spectrum, k: Complex64, k0: f64, q: &QuadratureSpec) -> Result<Complex64> {
    delta_with_weight(|s| log_weight(spec, s), &[spec.a], Point::Off(k), k0, q)
}

/// Boundary value `δ_±(s)` for real `s < k₀`; `Above` is the `+` side.
///
/// # Errors
/// As [`delta_with_weight`].
pub fn delta_boundary(spec: &Genus0Spectrum, s: f64, side: AxisSide, k0: f64, q: &QuadratureSpec) -> Result<Complex64> {
    delta_with_weight(|u| log_weight(spec, u), &[spec.a], Point::Boundary(s, side), k0, q)
}

/// `χ(k₀, ξ)` for the step weight.
///
/// # Errors
/// As [`chi_with_weight`].
pub fn chi_fn(spec: &Genus0Spectrum, k0: f64, n_cut: f64, q: &QuadratureSpec) -> Result<Complex64> {
    chi_with_weight(|s| log_weight(spec, s), &[spec.a], k0, n_cut, q)
}

/// The jump matrix `J(x,t,k)` of the basic Riemann–Hilbert problem.
///
/// # Errors
/// [`Error::Branch`] at `k = A`, [`Error::Domain`] off `ℝ ∪ band`,
/// [`Error::Endpoint`] near `E₀`, `Ē₀`.
pub fn jump_j(spec: &Genus0Spectrum, x: f64, t: f64, k: Complex64) -> Result<Matrix2> {
    // tθ = 2tk² + xk, so t = 0 needs no special case.
    let t_theta = k * k * (2.0 * t) + k * x;
    let e = (I * 2.0 * t_theta).exp();
    if k.im == 0.0 {
        if k.re == spec.a {
            return Err(Error::Branch);
        }
        let r = reflection(spec, k, None)?;
        return Ok(Matrix2::new(ONE, -r.conj() / e, -r * e, cr(1.0 + r.norm_sqr())));
    }
    if !spec.on_cut(k) {
        return Err(Error::Domain("jump matrix requested off the contour"));
    }
    if k.im > 0.0 {
        Ok(Matrix2::lower(f_jump(spec, k)? * e))
    } else {
        Ok(Matrix2::upper(-f_jump(spec, k.conj())?.conj() / e))
    }
}

/// Spectral data with the constants that every edge evaluation reuses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringData {
    /// Underlying spectrum.
    pub spec: Genus0Spectrum,
    /// Quadrature settings for all Cauchy integrals.
    pub quad: QuadratureSpec,
    /// `φ̂(E₀)`.
    pub phi_hat: Complex64,
    /// `δ(E₀, A)`: the `δ`-function at `k = E₀` with `k₀ = A`.
    pub delta_e0_a: Complex64,
}

impl ScatteringData {
    /// Computes and caches `φ̂(E₀)` and `δ(E₀, A)`.
    ///
    /// # Errors
    /// [`Error::Convergence`], [`Error::Quadrature`], or [`Error::Domain`]
    /// for an invalid quadrature spec.
    pub fn new(spec: Genus0Spectrum, quad: QuadratureSpec) -> Result<Self> {
        quad.validate()?;
        let phi_hat = phi_hat_e0(&spec)?;
        let delta_e0_a = delta_fn(&spec, spec.e0(), spec.a, &quad)?;
        Ok(Self { spec, quad, phi_hat, delta_e0_a })
    }

    /// See [`reflection`].
    ///
    /// # Errors
    /// As [`reflection`].
    pub fn r(&self, k: Complex64, side: Option<BranchSide>) -> Result<Complex64> {
        reflection(&self.spec, k, side)
    }

    /// See [`delta_fn`].
    ///
    /// # Errors
    /// As [`delta_fn`].
    pub fn delta(&self, k: Complex64, k0: f64) -> Result<Complex64> {
        delta_fn(&self.spec, k, k0, &self.quad)
    }

    /// See [`chi_fn`].
    ///
    /// # Errors
    /// As [`chi_fn`].
    pub fn chi(&self, k0: f64, n_cut: f64) -> Result<Complex64> {
        chi_fn(&self.spec, k0, n_cut, &self.quad)
    }
}

/// Edge scaling quantities at `x = Ct − ρ ln t / B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeFrame {
    /// Logarithmic offset behind the edge.
    pub rho: f64,
    /// Time.
    pub t: f64,
    /// Position.
    pub x: f64,
    /// `ξ = x/(4t)`.
    pub xi: f64,
    /// Stationary point `k₀ = −ξ`.
    pub k0: f64,
    /// `γ = ρ − 1/4`.
    pub gamma: f64,
    /// Soliton index; `None` in the parabolic-only regime.
    pub n: Option<u32>,
    /// `φ(t) = 2t(A² + B²) + ρA ln t / B`.
    pub phi_t: f64,
    /// `ν(k₀)`.
    pub nu: f64,
    /// `χ(k₀)`.
    pub chi: Complex64,
    /// Phase `ψ` of the oscillatory term.
    pub psi: f64,
    /// Ambiguity of `ψ` caused by the side choice of `arg r` at `k₀ = A`.
    pub psi_ambiguity: f64,
}

impl EdgeFrame {
    /// Frame at offset `ρ ≥ 0` and time `t > 0`.
    ///
    /// # Errors
    /// [`Error::Domain`] for `ρ < 0` or `t ≤ 0`; quadrature errors from `χ`.
    pub fn new(sd: &ScatteringData, rho: f64, t: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::Domain("rho must be finite and non-negative"));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain("t must be finite and positive"));
        }
        let x = sd.spec.c() * t - rho * t.ln() / sd.spec.b;
        Self::build(sd, rho, t, x)
    }

    /// Frame at an arbitrary position; `ρ` is recovered from `x`. Points
    /// ahead of the edge (`ρ < 0`) are in the parabolic-only regime.
    ///
    /// # Errors
    /// [`Error::Domain`] for `t ≤ 0` or `t = 1` (where `ρ` is undefined).
    pub fn from_x(sd: &ScatteringData, x: f64, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite() && x.is_finite()) || t == 1.0 {
            return Err(Error::Domain("from_x needs finite x and t > 0, t != 1"));
        }
        let rho = (sd.spec.c() * t - x) * sd.spec.b / t.ln();
        Self::build(sd, rho, t, x)
    }

    fn build(sd: &ScatteringData, rho: f64, t: f64, x: f64) -> Result<Self> {
        let spec = &sd.spec;
        let (a, b) = (spec.a, spec.b);
        let xi = x / (4.0 * t);
        let k0 = -xi;
        let n = if rho < 0.0 {
            None
        } else {
            crate::edge_asymptotics::soliton_index(rho)?.index()
        };
        let phi_t = 2.0 * t * (a * a + b * b) + rho * a * t.ln() / b;
        let nu = nu_of(spec, k0);
        let n_cut = (-k0).max(0.0) + 5.0;
        let chi = sd.chi(k0, n_cut)?;
        let (arg_r, psi_ambiguity) = arg_reflection_real(spec, k0);
        let psi = 4.0 * t * xi * xi + nu * (8.0 * t).ln() + 2.0 * chi.arg() - arg_r - arg_gamma_i(nu)? + FRAC_PI_4;
        Ok(Self { rho, t, x, xi, k0, gamma: rho - 0.25, n, phi_t, nu, chi, psi, psi_ambiguity })
    }
}

/// `arg Γ(iν)`, with the limit `−π/2` at `ν = 0`.
///
/// # Errors
/// Never for real `ν`; kept fallible for the Gamma interface.
pub fn arg_gamma_i(nu: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok(-FRAC_PI_2);
    }
    Ok(gamma_complex(c(0.0, nu))?.arg())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Genus0Spectrum {
        Genus0Spectrum::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn ab_oracle() {
        let (a, b) = scattering_ab(&unit(), cr(2.0), None).unwrap();
        let kap = (c(2.0, -1.0) / c(2.0, 1.0)).powf(0.25);
        assert!((a - (kap + kap.inv()) / 2.0).norm() < 1e-15);
        assert!((a - c(0.9732, 0.0)).norm() < 1e-4);
        assert!((b - c(0.0, -0.2298)).norm() < 1e-4);
        let r = reflection(&unit(), cr(2.0), None).unwrap();
        assert!((r - b / a).norm() < 1e-15);
        assert!((r - c(0.0, -0.2361)).norm() < 1e-4);
    }

    #[test]
    fn large_k_limits() {
        let s = Genus0Spectrum::new(-0.5, 1.2).unwrap();
        let (a, b) = scattering_ab(&s, cr(-0.5 + 1e6), None).unwrap();
        assert!((a - ONE).norm() < 1e-6 && b.norm() < 1e-6);
        assert!(reflection(&s, cr(-1e6), None).unwrap().norm() < 1e-6);
    }

    #[test]
    fn closed_form_modulus() {
        let s = Genus0Spectrum::new(0.4, 0.7).unwrap();
        for x in [-5.0, -0.1, 0.39, 0.41, 2.0, 30.0] {
            let r = reflection(&s, cr(x), None).unwrap();
            assert!((r.norm_sqr() - reflection_abs2(&s, x)).abs() < 1e-14);
            assert!(r.re.abs() < 1e-15);
        }
        assert_eq!(reflection_abs2(&s, 0.4), 1.0);
    }

    #[test]
    fn f_at_band_crossing() {
        let s = Genus0Spectrum::new(0.3, 1.1).unwrap();
        let f = f_jump(&s, cr(0.3)).unwrap();
        let rm = reflection(&s, cr(0.3), Some(BranchSide::Minus)).unwrap();
        let rp = reflection(&s, cr(0.3), Some(BranchSide::Plus)).unwrap();
        assert!((f - (rm - rp)).norm() < 1e-14);
        assert!((f - c(0.0, 2.0)).norm() < 1e-14);
        assert!((rp + I).norm() < 1e-14 && (rm - I).norm() < 1e-14);
    }

    #[test]
    fn f_symmetry() {
        let s = Genus0Spectrum::new(-0.2, 0.9).unwrap();
        for y in [0.1, 0.45, 0.85] {
            let f = f_jump(&s, c(-0.2, y)).unwrap();
            let g = f_jump(&s, c(-0.2, -y)).unwrap();
            assert!((g.conj() + f).norm() < 1e-13);
        }
        assert!(f_jump(&s, c(0.0, 0.5)).is_err());
    }

    #[test]
    fn phi_hat_matches_closed_form() {
        for (a, b) in [(0.0, 1.0), (-1.0, 0.5), (0.7, 2.0)] {
            let s = Genus0Spectrum::new(a, b).unwrap();
            let v = phi_hat_e0(&s).unwrap();
            assert!((v - phi_hat_e0_exact(&s)).norm() < 1e-8, "A={a} B={b}");
        }
    }

    #[test]
    fn phi_hat_first_order_consistency() {
        let s = unit();
        let ph = phi_hat_e0(&s).unwrap();
        let eps = 1e-8;
        let f = f_jump(&s, s.e0() - I * eps).unwrap();
        let approx = Complex64::from_polar(1.0, -FRAC_PI_4) * ph * eps.sqrt();
        assert!((f - approx).norm() < 1e-6 * f.norm());
    }

    #[test]
    fn nu_values() {
        let s = unit();
        assert!((nu_of(&s, 0.0) - core::f64::consts::LN_2 / (2.0 * PI)).abs() < 1e-15);
        assert!((nu_of(&s, 0.0) - 0.110318).abs() < 1e-6);
        let r = reflection(&s, cr(0.01), None).unwrap();
        assert!((nu_of(&s, 0.01) - r.norm_sqr().ln_1p() / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn zero_weight_gives_trivial_functions() {
        let q = QuadratureSpec::default();
        let d = delta_with_weight(|_| 0.0, &[], Point::Off(c(0.3, 0.2)), 1.0, &q).unwrap();
        assert_eq!(d, ONE);
        let x = chi_with_weight(|_| 0.0, &[], 0.2, 5.0, &q).unwrap();
        assert_eq!(x, ONE);
    }

    #[test]
    fn delta_jump() {
        let s = Genus0Spectrum::new(-1.0, 0.5).unwrap();
        let q = QuadratureSpec::default();
        let k0 = -0.8;
        let s0 = k0 - 1.0;
        let up = delta_boundary(&s, s0, AxisSide::Above, k0, &q).unwrap();
        let dn = delta_boundary(&s, s0, AxisSide::Below, k0, &q).unwrap();
        assert!((up / dn - cr(1.0 + reflection_abs2(&s, s0))).norm() < 1e-8);
    }

    #[test]
    fn delta_decays_to_one() {
        let q = QuadratureSpec::default();
        let d = delta_fn(&unit(), c(1e5, 2e5), 0.1, &q).unwrap();
        assert!((d - ONE).norm() < 1e-4);
    }

    #[test]
    fn chi_is_unimodular_and_finite() {
        let q = QuadratureSpec::default();
        let x = chi_fn(&unit(), 0.01, 5.0, &q).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-12);
        assert!(chi_fn(&unit(), -6.0, 5.0, &q).is_err());
    }

    #[test]
    fn jump_shapes() {
        let s = unit();
        let j = jump_j(&s, 0.4, 1.3, c(0.0, 0.5)).unwrap();
        assert_eq!((j.m11, j.m12, j.m22), (ONE, ZERO, ONE));
        let j = jump_j(&s, 0.4, 1.3, c(0.0, -0.5)).unwrap();
        assert_eq!((j.m11, j.m21, j.m22), (ONE, ZERO, ONE));
        assert_eq!(jump_j(&s, 0.4, 1.3, ZERO), Err(Error::Branch));
        assert!(jump_j(&s, 0.4, 1.3, c(1.0, 1.0)).is_err());
        let j = jump_j(&s, 0.4, 1.3, cr(0.7)).unwrap();
        assert!((j.det() - ONE).norm() < 1e-14);
    }

    #[test]
    fn arg_gamma_limit() {
        assert!((arg_gamma_i(1e-9).unwrap() + FRAC_PI_2).abs() < 1e-8);
        assert_eq!(arg_gamma_i(0.0).unwrap(), -FRAC_PI_2);
    }
}
