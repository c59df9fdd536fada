//! Genus-0 spectral curve and the explicit Baker–Akhiezer matrix.
//!
//! The curve has a single band, the vertical segment `[E₀, Ē₀]` with
//! `E₀ = A + iB`, oriented downwards. Its left side (the one with
//! `Re k > A`) is [`BranchSide::Plus`]. The fourth root `κ₀` and the square
//! root `h` are realised with arguments of `k − E₀`, `k − Ē₀` taken in
//! `(−π/2, 3π/2]`; both cuts then point downwards and cancel below `Ē₀`.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::matrix::Matrix2;
use crate::prelude::*;

/// Distance to `E₀` or `Ē₀` below which evaluations are refused.
pub const ENDPOINT_GUARD: f64 = 1e-10;

/// Band endpoint `E₀ = A + iB` of the plane-wave background.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Genus0Spectrum {
    /// `A = Re E₀`.
    pub a: f64,
    /// `B = Im E₀ > 0`.
    pub b: f64,
}

/// Side of the band from which a boundary value is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchSide {
    /// Left of the downward orientation: `Re k > A`.
    Plus,
    /// Right of the downward orientation: `Re k < A`.
    Minus,
}

impl Genus0Spectrum {
    /// # Errors
    /// [`Error::Domain`] unless `B > 0` and both numbers are finite.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > 0.0) {
            return Err(Error::Domain("spectrum requires finite A and B > 0"));
        }
        Ok(Self { a, b })
    }

    /// `E₀ = A + iB`.
    pub fn e0(&self) -> Complex64 {
        c(self.a, self.b)
    }

    /// `Ē₀ = A − iB`.
    pub fn e0_bar(&self) -> Complex64 {
        c(self.a, -self.b)
    }

    /// Edge speed `C = −4A`.
    pub fn c(&self) -> f64 {
        -4.0 * self.a
    }

    /// `h₀ = −A`.
    pub fn h0(&self) -> f64 {
        -self.a
    }

    /// `g₀ = B² − 2A²`.
    pub fn g0(&self) -> f64 {
        self.b * self.b - 2.0 * self.a * self.a
    }

    /// Whether `k` lies on the open band.
    pub fn on_cut(&self, k: Complex64) -> bool {
        k.re == self.a && k.im.abs() < self.b
    }
}

fn arg_down(w: Complex64) -> f64 {
    let a = w.im.atan2(w.re);
    if a <= -FRAC_PI_2 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Moduli and arguments of `k − E₀` and `k − Ē₀` on the chosen branch.
fn polar_pair(spec: &Genus0Spectrum, k: Complex64, side: Option<BranchSide>) -> Result<[(f64, f64); 2]> {
    let d1 = k - spec.e0();
    let d2 = k - spec.e0_bar();
    if d1.norm() < ENDPOINT_GUARD || d2.norm() < ENDPOINT_GUARD {
        return Err(Error::Endpoint);
    }
    if spec.on_cut(k) {
        let arg1 = match side.ok_or(Error::Branch)? {
            BranchSide::Plus => -FRAC_PI_2,
            BranchSide::Minus => 3.0 * FRAC_PI_2,
        };
        return Ok([(d1.norm(), arg1), (d2.norm(), FRAC_PI_2)]);
    }
    Ok([(d1.norm(), arg_down(d1)), (d2.norm(), arg_down(d2))])
}

/// `κ₀(k) = ((k − E₀)/(k − Ē₀))^{1/4}`, normalised by `κ₀(∞) = 1`.
///
/// # Errors
/// [`Error::Branch`] on the band without a side, [`Error::Endpoint`] near
/// `E₀`, `Ē₀`.
pub fn kappa0(spec: &Genus0Spectrum, k: Complex64, side: Option<BranchSide>) -> Result<Complex64> {
    let [(m1, a1), (m2, a2)] = polar_pair(spec, k, side)?;
    Ok(c(0.25 * (m1.ln() - m2.ln()), 0.25 * (a1 - a2)).exp())
}

/// `h(k) = √((k − A)² + B²)` with `h ~ k − A`, and `g(k) = 2(k + A)h(k)`.
///
/// # Errors
/// As [`kappa0`].
pub fn h_and_g(spec: &Genus0Spectrum, k: Complex64, side: Option<BranchSide>) -> Result<(Complex64, Complex64)> {
    let [(m1, a1), (m2, a2)] = polar_pair(spec, k, side)?;
    let h = Complex64::from_polar((m1 * m2).sqrt(), 0.5 * (a1 + a2));
    Ok((h, (k + spec.a) * h * 2.0))
}

/// `N₀(k) = ½[[κ+κ⁻¹, κ−κ⁻¹], [κ−κ⁻¹, κ+κ⁻¹]]`.
///
/// # Errors
/// As [`kappa0`].
pub fn n0_matrix(spec: &Genus0Spectrum, k: Complex64, side: Option<BranchSide>) -> Result<Matrix2> {
    let kap = kappa0(spec, k, side)?;
    let p = (kap + kap.inv()) * 0.5;
    let m = (kap - kap.inv()) * 0.5;
    Ok(Matrix2::new(p, m, m, p))
}

/// `Φ^p(x,t,k) = e^{i(xh₀+tg₀)σ₃} N₀(k) e^{−i(xh+tg)σ₃}` off the band.
///
/// # Errors
/// As [`kappa0`].
pub fn baker_akhiezer_phi(spec: &Genus0Spectrum, x: f64, t: f64, k: Complex64) -> Result<Matrix2> {
    baker_akhiezer_phi_side(spec, x, t, k, None)
}

/// [`baker_akhiezer_phi`] with an explicit side for band points.
///
/// # Errors
/// As [`kappa0`].
pub fn baker_akhiezer_phi_side(
    spec: &Genus0Spectrum,
    x: f64,
    t: f64,
    k: Complex64,
    side: Option<BranchSide>,
) -> Result<Matrix2> {
    let n0 = n0_matrix(spec, k, side)?;
    let (h, g) = h_and_g(spec, k, side)?;
    let phase0 = cr(x * spec.h0() + t * spec.g0());
    Ok(Matrix2::exp_sigma3(I * phase0) * n0 * Matrix2::exp_sigma3(-I * (h * x + g * t)))
}

/// Plane wave `q_p(x,t) = B e^{2i(xh₀ + tg₀)}`.
pub fn q_plane_wave(spec: &Genus0Spectrum, x: f64, t: f64) -> Complex64 {
    Complex64::from_polar(spec.b, 2.0 * (x * spec.h0() + t * spec.g0()))
}

/// `∂ₓ q_p = 2ih₀ q_p`.
pub fn q_plane_wave_x(spec: &Genus0Spectrum, x: f64, t: f64) -> Complex64 {
    I * (2.0 * spec.h0()) * q_plane_wave(spec, x, t)
}

/// `Q = [[0, q], [−q̄, 0]]` of the x-equation `Φ_x + ikσ₃Φ = QΦ`.
pub fn lax_q(q: Complex64) -> Matrix2 {
    Matrix2::new(ZERO, q, -q.conj(), ZERO)
}

/// `Q̃ = 2kQ − i(Q² + Q_x)σ₃` of the t-equation `Φ_t + 2ik²σ₃Φ = Q̃Φ`.
pub fn lax_q_tilde(q: Complex64, q_x: Complex64, k: Complex64) -> Matrix2 {
    let big_q = lax_q(q);
    big_q * (k * 2.0) - (big_q * big_q + lax_q(q_x)) * Matrix2::sigma3() * I
}
