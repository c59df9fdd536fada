//! Soliton and oscillatory terms at the leading edge.
//!
//! Along `x = Ct − ρ ln t/B` the solution is `q_sol + q_par + O(ln t/t)`.
//! The soliton index is `n = ⌊ρ − ¼⌋`; for `ρ < ¼` only the oscillatory
//! term survives.
//!
//! The pole-removal coefficients come from two schemes. Writing
//! `X = H/(2Bz′)`, the first gives `q∞ = 2ib̃₁ = 4iB X̄/(1 + |X|²)`. The
//! second satisfies `H₂(n)/(2Bz′) = −2Bz′/H(n−1)`, so its `q∞ = 2ib₂` at
//! index `n` coincides with the first at `n − 1`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::parametrix::frame::z_derivatives;
use crate::parametrix::laguerre_rhp::{factorial, gamma_half};
use crate::prelude::*;
use crate::scattering::{EdgeFrame, ScatteringData};

/// Which terms the edge asymptotics contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `ρ < ¼`: no soliton, only the decaying oscillation.
    ParabolicOnly,
    /// Soliton of index `n`.
    Soliton(u32),
}

impl Regime {
    /// Soliton index, if any.
    pub fn index(self) -> Option<u32> {
        match self {
            Regime::ParabolicOnly => None,
            Regime::Soliton(n) => Some(n),
        }
    }
}

/// Regime for offset `ρ`: the unique `n` with `ρ ∈ [n+¼, n+5/4)`.
///
/// # Errors
/// [`Error::Domain`] for negative or non-finite `ρ`.
pub fn soliton_index(rho: f64) -> Result<Regime> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::Domain("rho must be finite and non-negative"));
    }
    if rho < 0.25 {
        return Ok(Regime::ParabolicOnly);
    }
    let n = (rho - 0.25).floor();
    if n > f64::from(u32::MAX) {
        return Err(Error::Domain("rho too large"));
    }
    Ok(Regime::Soliton(n as u32))
}

/// Approximation scheme for the pole-removal matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Index `⌊γ⌋`, natural for `{γ} ∈ [0, ½]`.
    First,
    /// Index `⌊γ⌋ + 1`, natural for `{γ} ∈ (½, 1)`.
    Second,
}

/// Natural index of `scheme` at `γ = ρ − ¼`.
///
/// # Errors
/// [`Error::Domain`] for the first scheme with `γ < 0`.
pub fn scheme_index(gamma: f64, scheme: Scheme) -> Result<u32> {
    if !gamma.is_finite() {
        return Err(Error::Domain("gamma must be finite"));
    }
    match scheme {
        Scheme::First if gamma < 0.0 => Err(Error::Domain("first scheme needs gamma >= 0")),
        Scheme::First => Ok(gamma.floor() as u32),
        Scheme::Second if gamma < 0.0 => Ok(0),
        Scheme::Second => Ok(gamma.floor() as u32 + 1),
    }
}

/// Pole-removal coefficients of one scheme.
///
/// For [`Scheme::Second`] the fields hold `H₂, H₂,d, a₂, b₂, ã₂, b̃₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementCoeffs {
    /// Scheme used.
    pub scheme: Scheme,
    /// Laguerre index.
    pub n: u32,
    /// `B`, kept for the identities.
    pub b: f64,
    /// `z′`.
    pub zp: Complex64,
    /// `z_d′`.
    pub zdp: Complex64,
    /// `H`.
    pub h: Complex64,
    /// `H_d`.
    pub h_d: Complex64,
    /// `a₁`.
    pub a1: Complex64,
    /// `b₁`.
    pub b1: Complex64,
    /// `ã₁`.
    pub a1_t: Complex64,
    /// `b̃₁`.
    pub b1_t: Complex64,
}

impl RefinementCoeffs {
    /// `q∞`: `2ib̃₁` for the first scheme, `2ib₂` for the second.
    pub fn q_inf(&self) -> Complex64 {
        match self.scheme {
            Scheme::First => I * 2.0 * self.b1_t,
            Scheme::Second => I * 2.0 * self.b1,
        }
    }

    /// Residuals of the four linear equations fixing the coefficients.
    ///
    /// Each residual is divided by the rounding scale of its terms (the
    /// same sum with every factor replaced by its modulus) when that
    /// exceeds one.
    pub fn system_residuals(&self) -> [Complex64; 4] {
        let ib2 = I * 2.0 * self.b;
        let gd = self.h_d / self.zdp;
        let g = self.h / self.zp;
        let m = |z: Complex64| z.norm() / (2.0 * self.b);
        let res = [
            (self.b1_t + (ONE - self.a1 / ib2) * gd, self.b1_t.norm() + (1.0 + m(self.a1)) * gd.norm()),
            (self.a1_t - self.b1 / ib2 * gd, self.a1_t.norm() + m(self.b1) * gd.norm()),
            (self.b1 + (ONE + self.a1_t / ib2) * g, self.b1.norm() + (1.0 + m(self.a1_t)) * g.norm()),
            (self.a1 + self.b1_t / ib2 * g, self.a1.norm() + m(self.b1_t) * g.norm()),
        ];
        res.map(|(r, scale)| r / scale.max(1.0))
    }

    /// Residuals of `(a − iB)² = −B²(1 − |q∞|²/4B²)` and the companion
    /// `b² = −q∞²/4`, with `a = a₁` (first) or `−ã₂` (second) and
    /// `b = b̃₁` (first) or `b₂` (second).
    pub fn ab_comb_residuals(&self) -> [Complex64; 2] {
        let b = self.b;
        let q = self.q_inf();
        let (a, bb) = match self.scheme {
            Scheme::First => (self.a1, self.b1_t),
            Scheme::Second => (-self.a1_t, self.b1),
        };
        let lhs = (a - I * b).powi(2);
        let rhs = cr(-b * b * (1.0 - q.norm_sqr() / (4.0 * b * b)));
        [lhs - rhs, bb * bb + q * q / 4.0]
    }
}

fn check_time(edge: &EdgeFrame) -> Result<()> {
    if edge.t > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain("edge asymptotics need t > 1"))
    }
}

fn sign(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Coefficients at the natural index of `scheme`.
///
/// # Errors
/// [`Error::Domain`] for `t ≤ 1` or the first scheme ahead of `γ = 0`;
/// [`Error::Degenerate`]; quadrature errors from `δ(E₀, ξ)`.
pub fn refinement_coeffs(sd: &ScatteringData, edge: &EdgeFrame, scheme: Scheme) -> Result<RefinementCoeffs> {
    refinement_coeffs_with_index(sd, edge, scheme, scheme_index(edge.gamma, scheme)?)
}

/// Coefficients at an explicit index `n`.
///
/// # Errors
/// As [`refinement_coeffs`].
pub fn refinement_coeffs_with_index(
    sd: &ScatteringData,
    edge: &EdgeFrame,
    scheme: Scheme,
    n: u32,
) -> Result<RefinementCoeffs> {
    check_time(edge)?;
    let spec = &sd.spec;
    let b = spec.b;
    let (zp, zdp) = z_derivatives(spec, edge);
    let delta = sd.delta(spec.e0(), edge.k0)?;
    let phi_hat = sd.phi_hat;
    let e2 = Complex64::from_polar(1.0, 2.0 * edge.phi_t);
    let sqrt_2b = (2.0 * b).sqrt();
    let power = 2.0 * f64::from(n) + 0.5;
    let w = (zp * (2.0 * b)).powf(power);
    let w_d = (zdp * (2.0 * b)).powf(power);
    let two_pi_i = c(0.0, 2.0 * PI);
    let s = -sign(n);
    let (h, h_d) = match scheme {
        Scheme::First => {
            let amp = s * factorial(n) * gamma_half(n + 1) * edge.t.powf(2.0 * edge.gamma - 2.0 * f64::from(n) - 1.0);
            (
                amp * sqrt_2b * phi_hat / (two_pi_i * e2 * delta * delta * w),
                amp * sqrt_2b * e2 * phi_hat.conj() / (two_pi_i * delta.conj().powi(2) * w_d),
            )
        }
        Scheme::Second => {
            let r2 = two_pi_i * f64::from(n) / (factorial(n) * gamma_half(n));
            let amp = r2 * s * edge.t.powf(2.0 * f64::from(n) - 2.0 * edge.gamma - 1.0);
            (
                amp * w * e2 * delta * delta / (phi_hat * sqrt_2b),
                amp * w_d * delta.conj().powi(2) / (phi_hat.conj() * sqrt_2b * e2),
            )
        }
    };
    let den = zp * zdp * (4.0 * b * b) - h * h_d;
    if !(den.norm() > 0.0) || !den.is_finite() {
        return Err(Error::Degenerate);
    }
    let a1 = -I * 2.0 * b * h * h_d / den;
    Ok(RefinementCoeffs {
        scheme,
        n,
        b,
        zp,
        zdp,
        h,
        h_d,
        a1,
        b1: -h * zdp * (4.0 * b * b) / den,
        a1_t: -a1,
        b1_t: -h_d * zp * (4.0 * b * b) / den,
    })
}

/// The soliton term with its envelope argument and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonTerm {
    /// `q_sol`.
    pub q: Complex64,
    /// Argument `Φ` of the `cosh`.
    pub phi_env: f64,
    /// `arg q_sol`, unreduced.
    pub theta: f64,
}

/// `ln` of the constant inside the envelope argument.
fn ln_envelope_constant(sd: &ScatteringData, n: u32) -> f64 {
    let b = sd.spec.b;
    let p = 2.0 * f64::from(n) + 1.5;
    (2.0 * PI).ln() + 2.0 * sd.delta_e0_a.norm().ln() + p * (16.0 * b * b).ln()
        - factorial(n).ln()
        - gamma_half(n + 1).ln()
        - sd.phi_hat.norm().ln()
        - 0.5 * (2.0 * b).ln()
}

/// Envelope argument `2B(x + 4At) + (2n+3/2)ln t + ln K`.
pub fn envelope_argument(sd: &ScatteringData, x: f64, t: f64, n: u32) -> f64 {
    let spec = &sd.spec;
    2.0 * spec.b * (x + 4.0 * spec.a * t) + (2.0 * f64::from(n) + 1.5) * t.ln() + ln_envelope_constant(sd, n)
}

/// Position where the envelope argument vanishes.
pub fn soliton_center(sd: &ScatteringData, t: f64, n: u32) -> f64 {
    let spec = &sd.spec;
    -4.0 * spec.a * t - ((2.0 * f64::from(n) + 1.5) * t.ln() + ln_envelope_constant(sd, n)) / (2.0 * spec.b)
}

/// `1/cosh x` without overflow.
pub fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// Soliton term of index `n` at `(x, t)`.
pub fn soliton_term(sd: &ScatteringData, x: f64, t: f64, n: u32) -> SolitonTerm {
    let spec = &sd.spec;
    let (a, b) = (spec.a, spec.b);
    let phase = -(a * x + 2.0 * t * (a * a - b * b));
    let theta = PI * f64::from(n) + 2.0 * phase - sd.phi_hat.arg() + 2.0 * sd.delta_e0_a.arg();
    let phi_env = envelope_argument(sd, x, t, n);
    let q = Complex64::from_polar(2.0 * b * sech(phi_env), theta);
    SolitonTerm { q, phi_env, theta }
}

/// `q_sol` with an explicit index.
///
/// # Errors
/// [`Error::Domain`] for `t ≤ 1`.
pub fn q_sol_with_index(sd: &ScatteringData, edge: &EdgeFrame, n: u32) -> Result<Complex64> {
    check_time(edge)?;
    Ok(soliton_term(sd, edge.x, edge.t, n).q)
}

/// `q_sol` at the index of the frame; zero in the parabolic-only regime.
///
/// # Errors
/// [`Error::Domain`] for `t ≤ 1`.
pub fn q_sol_eval(sd: &ScatteringData, edge: &EdgeFrame) -> Result<Complex64> {
    match edge.n {
        Some(n) => q_sol_with_index(sd, edge, n),
        None => check_time(edge).map(|()| ZERO),
    }
}

fn amplitude(edge: &EdgeFrame) -> f64 {
    (edge.nu / (2.0 * edge.t)).sqrt()
}

/// `q_par` for a given soliton value.
pub fn q_par_from(edge: &EdgeFrame, q_sol: Complex64, b: f64) -> Complex64 {
    if edge.nu == 0.0 {
        return ZERO;
    }
    let e = Complex64::from_polar(1.0, edge.psi);
    let s = q_sol / (2.0 * b);
    amplitude(edge) * (e * (1.0 - s.norm_sqr()) - e.conj() * s * s)
}

/// `√(ν/2t)e^{iψ} − √(2ν/t)cos(ψ − θ)e^{iθ}/cosh²Φ`.
pub fn q_par_cos_form(edge: &EdgeFrame, sol: Option<&SolitonTerm>) -> Complex64 {
    let amp = amplitude(edge);
    let base = Complex64::from_polar(amp, edge.psi);
    match sol {
        None => base,
        Some(s) => {
            let sh = sech(s.phi_env);
            base - Complex64::from_polar(2.0 * amp * (edge.psi - s.theta).cos() * sh * sh, s.theta)
        }
    }
}

/// `√(ν/2t)(e^{iψ}tanh²Φ − e^{2iθ − iψ}/cosh²Φ)`.
pub fn q_par_tanh_form(edge: &EdgeFrame, sol: Option<&SolitonTerm>) -> Complex64 {
    let amp = amplitude(edge);
    match sol {
        None => Complex64::from_polar(amp, edge.psi),
        Some(s) => {
            let sh2 = sech(s.phi_env).powi(2);
            Complex64::from_polar(amp * (1.0 - sh2), edge.psi) - Complex64::from_polar(amp * sh2, 2.0 * s.theta - edge.psi)
        }
    }
}

/// `q_par` at the frame.
///
/// # Errors
/// [`Error::Domain`] for `t ≤ 1`.
pub fn q_par_eval(sd: &ScatteringData, edge: &EdgeFrame) -> Result<Complex64> {
    Ok(q_par_from(edge, q_sol_eval(sd, edge)?, sd.spec.b))
}

/// All edge terms at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeResult {
    /// Regime of the point.
    pub regime: Regime,
    /// Soliton term (zero without soliton).
    pub q_sol: Complex64,
    /// Oscillatory term.
    pub q_par: Complex64,
    /// `q_sol + q_par`.
    pub q_total: Complex64,
    /// Envelope argument `Φ`; `None` without soliton.
    pub phi_env: Option<f64>,
    /// `arg q_sol` reduced to `(−π, π]`; `None` without soliton.
    pub arg_qsol: Option<f64>,
    /// `ψ`.
    pub psi: f64,
    /// `ν(k₀)`.
    pub nu: f64,
    /// Ambiguity of `ψ` at the band crossing.
    pub psi_ambiguity: f64,
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = num_traits::Euclid::rem_euclid(&a, &(2.0 * PI));
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Evaluates every edge term.
///
/// # Errors
/// [`Error::Domain`] for `t ≤ 1`.
pub fn q_total(sd: &ScatteringData, edge: &EdgeFrame) -> Result<EdgeResult> {
    check_time(edge)?;
    let sol = edge.n.map(|n| soliton_term(sd, edge.x, edge.t, n));
    let q_sol = sol.map_or(ZERO, |s| s.q);
    let q_par = q_par_from(edge, q_sol, sd.spec.b);
    Ok(EdgeResult {
        regime: edge.n.map_or(Regime::ParabolicOnly, Regime::Soliton),
        q_sol,
        q_par,
        q_total: q_sol + q_par,
        phi_env: sol.map(|s| s.phi_env),
        arg_qsol: sol.map(|s| wrap_angle(s.theta)),
        psi: edge.psi,
        nu: edge.nu,
        psi_ambiguity: edge.psi_ambiguity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::QuadratureSpec;
    use crate::spectrum::Genus0Spectrum;

    fn sd(a: f64, b: f64) -> ScatteringData {
        ScatteringData::new(Genus0Spectrum::new(a, b).unwrap(), QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn index_bands() {
        assert_eq!(soliton_index(0.1).unwrap(), Regime::ParabolicOnly);
        assert_eq!(soliton_index(0.25).unwrap(), Regime::Soliton(0));
        assert_eq!(soliton_index(1.2499).unwrap(), Regime::Soliton(0));
        assert_eq!(soliton_index(2.3).unwrap(), Regime::Soliton(2));
        assert!(soliton_index(-0.1).is_err());
        assert_eq!(scheme_index(0.75, Scheme::Second).unwrap(), 1);
        assert_eq!(scheme_index(-0.1, Scheme::Second).unwrap(), 0);
        assert!(scheme_index(-0.1, Scheme::First).is_err());
    }

    #[test]
    fn symmetry_and_system() {
        let s = sd(-1.0, 1.0);
        let edge = EdgeFrame::new(&s, 0.5, 100.0).unwrap();
        for scheme in [Scheme::First, Scheme::Second] {
            let rc = refinement_coeffs(&s, &edge, scheme).unwrap();
            assert!((rc.h_d.conj() + rc.h).norm() < 1e-12 * rc.h.norm().max(1.0));
            assert!((rc.a1_t + rc.a1).norm() == 0.0);
            assert!((rc.b1_t + rc.b1.conj()).norm() < 1e-12);
            for r in rc.system_residuals() {
                assert!(r.norm() < 1e-12, "{scheme:?} {r}");
            }
            for r in rc.ab_comb_residuals() {
                assert!(r.norm() < 1e-10, "{scheme:?} {r}");
            }
        }
    }

    #[test]
    fn scheme_shift() {
        let s = sd(-1.0, 0.5);
        for rho in [1.0, 2.0] {
            let edge = EdgeFrame::new(&s, rho, 1e3).unwrap();
            let second = refinement_coeffs(&s, &edge, Scheme::Second).unwrap();
            let first = refinement_coeffs_with_index(&s, &edge, Scheme::First, second.n - 1).unwrap();
            assert!((second.q_inf() - first.q_inf()).norm() < 1e-12);
        }
    }

    #[test]
    fn center_is_peak() {
        let s = sd(-1.0, 0.5);
        for (t, n) in [(50.0, 0), (300.0, 2)] {
            let x = soliton_center(&s, t, n);
            let term = soliton_term(&s, x, t, n);
            assert!(term.phi_env.abs() < 1e-9);
            assert!((term.q.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn phase_identity() {
        let s = sd(-0.7, 1.3);
        let edge = EdgeFrame::new(&s, 1.4, 250.0).unwrap();
        let (a, b) = (s.spec.a, s.spec.b);
        let alt = -(a * edge.x + 2.0 * edge.t * (a * a - b * b));
        assert!((alt - edge.phi_t).abs() < 1e-10 * edge.phi_t.abs());
    }

    #[test]
    fn forms_agree() {
        let s = sd(-1.0, 0.5);
        for (rho, t) in [(0.1, 20.0), (0.7, 40.0), (1.9, 400.0)] {
            let edge = EdgeFrame::new(&s, rho, t).unwrap();
            let res = q_total(&s, &edge).unwrap();
            let sol = edge.n.map(|n| soliton_term(&s, edge.x, t, n));
            let a = q_par_cos_form(&edge, sol.as_ref());
            let b = q_par_tanh_form(&edge, sol.as_ref());
            assert!((a - res.q_par).norm() < 1e-12);
            assert!((b - res.q_par).norm() < 1e-12);
            assert!(res.q_sol.norm() <= 2.0 * s.spec.b + 1e-15);
        }
    }

    #[test]
    fn parabolic_only_has_no_soliton() {
        let s = sd(-1.0, 0.5);
        let edge = EdgeFrame::new(&s, 0.1, 30.0).unwrap();
        let res = q_total(&s, &edge).unwrap();
        assert_eq!(res.q_sol, ZERO);
        assert_eq!(res.q_total, res.q_par);
        assert!(res.phi_env.is_none());
    }

    #[test]
    fn needs_late_time() {
        let s = sd(-1.0, 0.5);
        let edge = EdgeFrame::new(&s, 0.6, 0.5).unwrap();
        assert!(q_total(&s, &edge).is_err());
        assert!(refinement_coeffs(&s, &edge, Scheme::First).is_err());
    }

    #[test]
    fn wrap() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
    }
}
