//! Laguerre model problem.
//!
//! `L` is analytic off `[0, ∞)`, satisfies `L₋ = L₊ J_L` with
//! `J_L = [[1, 0], [−√s e^{−s}, 1]]` (the `+` side is above the axis) and
//! `L ζ^{nσ₃} → I`. For `n ≥ 1`
//!
//! ```text
//! L = [[c C[wπ_{n−1}], c π_{n−1}], [C[wπ_n], π_n]],   c = −2πi/(Γ(n+½)Γ(n)),
//! ```
//!
//! with `w(s) = √s e^{−s}` and `C` the Cauchy transform over `[0, ∞)`; for
//! `n = 0`, `L = [[1, 0], [C[w], 1]]`.
//!
//! `L_d = σ₁Lσ₁` lives on the same half-line oriented from `+∞` to `0`, so
//! its `+` side is *below* the axis and `L_d(above) = L_d(below)·[[1, w], [0, 1]]`.

use core::f64::consts::PI;

use crate::error::Result;
use crate::matrix::Matrix2;
use crate::prelude::*;
use crate::specfun::{cauchy_halfline, gamma_complex, laguerre_monic, laguerre_norm, Point, QuadratureSpec};

/// Coefficients of the `1/ζ` term of `L ζ^{nσ₃}` and the removal constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreCoeffs {
    /// Diagonal coefficient `n² + n/2` (entry (1,1); (2,2) carries its negative).
    pub diag: f64,
    /// Entry (1,2): `−2πi n/(Γ(n+½) n!)`.
    pub off12: Complex64,
    /// Entry (2,1): `−n! Γ(n+3/2)/(2πi)`.
    pub off21: Complex64,
    /// `R₁ = n! Γ(n+3/2)/(2πi)`, removing the (2,1) term.
    pub r1: Complex64,
    /// `R₂ = 2πi n/(n! Γ(n+½))`, removing the (1,2) term.
    pub r2: Complex64,
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub(crate) fn gamma_half(n: u32) -> f64 {
    // Γ(n + ½) by the upward recurrence from √π.
    (0..n).fold(PI.sqrt(), |g, j| g * (f64::from(j) + 0.5))
}

/// Large-`ζ` coefficients of the Laguerre matrix of degree `n`.
pub fn laguerre_expansion_coeffs(n: u32) -> LaguerreCoeffs {
    let nf = f64::from(n);
    let two_pi_i = c(0.0, 2.0 * PI);
    let h = laguerre_norm(n);
    let off12 = -two_pi_i * nf / (gamma_half(n) * factorial(n));
    let off21 = -cr(h) / two_pi_i;
    LaguerreCoeffs { diag: nf * nf + 0.5 * nf, off12, off21, r1: -off21, r2: -off12 }
}

/// Beyond this modulus the shifted Cauchy representation is used.
fn shift_radius(m: u32) -> f64 {
    4.0 * f64::from(m) + 6.0
}

/// `C[wπ_m](ζ) = (1/2πi)∫₀^∞ √s e^{−s} π_m(s)/(s − ζ) ds`.
///
/// For large `|ζ|` the orthogonality of `π_m` to lower powers is used:
/// `C[wπ_m](ζ) = ζ^{−m}(1/2πi)∫ w π_m s^m/(s − ζ) ds`, which avoids the
/// cancellation in the `O(ζ^{−m−1})` decay.
///
/// # Errors
/// Quadrature and domain errors from [`cauchy_halfline`].
pub fn weighted_cauchy(m: u32, p: Point, q: &QuadratureSpec) -> Result<Complex64> {
    let weight = |s: f64| s.sqrt() * (-s).exp();
    let z = p.z();
    if z.norm() > shift_radius(m) {
        let v = cauchy_halfline(|s| laguerre_monic(m, cr(s)) * (weight(s) * s.powi(m as i32)), p, q)?;
        Ok(v / z.powi(m as i32))
    } else {
        cauchy_halfline(|s| laguerre_monic(m, cr(s)) * weight(s), p, q)
    }
}

/// The Laguerre matrix `L(ζ)` of degree `n`.
///
/// # Errors
/// [`crate::Error::Domain`] for `ζ ∈ [0, ∞)` given as `Point::Off`;
/// quadrature errors.
pub fn laguerre_l(n: u32, p: Point, q: &QuadratureSpec) -> Result<Matrix2> {
    let z = p.z();
    if n == 0 {
        return Ok(Matrix2::lower(weighted_cauchy(0, p, q)?));
    }
    let cst = c(0.0, -2.0 * PI) / (gamma_half(n) * gamma_complex(cr(f64::from(n)))?);
    Ok(Matrix2::new(
        cst * weighted_cauchy(n - 1, p, q)?,
        cst * laguerre_monic(n - 1, z),
        weighted_cauchy(n, p, q)?,
        laguerre_monic(n, z),
    ))
}

/// `L_d = σ₁ L σ₁`. For boundary values remember that the `+` side of the
/// reversed half-line is below the axis.
///
/// # Errors
/// As [`laguerre_l`].
pub fn laguerre_ld(n: u32, p: Point, q: &QuadratureSpec) -> Result<Matrix2> {
    Ok(laguerre_l(n, p, q)?.flip())
}
