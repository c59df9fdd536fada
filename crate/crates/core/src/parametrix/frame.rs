//! Local coordinates near `E₀`, `Ē₀` and the stationary point `k₀`.
//!
//! With `ξ = −A − ρ ln t/(4Bt)` the phase satisfies exactly
//! `2itθ(E₀ + y) = 2ρ ln t − 2iφ(t) − t z(y)`, where
//! `z = y z′ − 4iy²`, `z′ = 8B + 2iρ ln t/(Bt)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::prelude::*;
use crate::scattering::EdgeFrame;
use crate::spectrum::Genus0Spectrum;

/// All local coordinates of a spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFrame {
    /// `y = k − E₀`.
    pub y: Complex64,
    /// `y_d = k − Ē₀`.
    pub y_d: Complex64,
    /// `z = y z′ − 4iy²`.
    pub z: Complex64,
    /// `z_d = y_d z_d′ + 4iy_d²`.
    pub z_d: Complex64,
    /// `z′ = 8B + 2iρ ln t/(Bt)`.
    pub zp: Complex64,
    /// `z_d′ = 8B − 2iρ ln t/(Bt)`.
    pub zdp: Complex64,
    /// `ζ = t z`.
    pub zeta: Complex64,
    /// `ζ_d = t z_d`.
    pub zeta_d: Complex64,
    /// `μ = k − k₀`.
    pub mu: Complex64,
    /// `λ = √(2t) μ`.
    pub lambda: Complex64,
    /// `θ(k, ξ) = 2k² + 4ξk`.
    pub theta: Complex64,
}

/// `(z′, z_d′)` of an edge frame.
pub fn z_derivatives(spec: &Genus0Spectrum, edge: &EdgeFrame) -> (Complex64, Complex64) {
    let im = 2.0 * edge.rho * edge.t.ln() / (spec.b * edge.t);
    (c(8.0 * spec.b, im), c(8.0 * spec.b, -im))
}

/// Local coordinates of `k` in the given frame.
pub fn frame_at(spec: &Genus0Spectrum, edge: &EdgeFrame, k: Complex64) -> LocalFrame {
    let (zp, zdp) = z_derivatives(spec, edge);
    let y = k - spec.e0();
    let y_d = k - spec.e0_bar();
    let z = y * zp - I * 4.0 * y * y;
    let z_d = y_d * zdp + I * 4.0 * y_d * y_d;
    let mu = k - edge.k0;
    LocalFrame {
        y,
        y_d,
        z,
        z_d,
        zp,
        zdp,
        zeta: z * edge.t,
        zeta_d: z_d * edge.t,
        mu,
        lambda: mu * (2.0 * edge.t).sqrt(),
        theta: k * k * 2.0 + k * (4.0 * edge.xi),
    }
}

fn newton_root(target: f64, start: Complex64, f: impl Fn(Complex64) -> (Complex64, Complex64)) -> Result<Complex64> {
    let mut y = start;
    for _ in 0..60 {
        let (val, der) = f(y);
        let step = (val - target) / der;
        y -= step;
        if step.norm() <= 1e-16 * (1.0 + y.norm()) {
            return Ok(y);
        }
    }
    let (val, _) = f(y);
    if (val - target).norm() <= 1e-13 * (1.0 + target.abs()) {
        Ok(y)
    } else {
        Err(Error::Convergence { spread: (val - target).norm() })
    }
}

/// Point `k = E₀ + y` of the segment `l⁺` on which `z(y) = s`, for small
/// real `s ≥ 0`, continued from `guess` (or from `s/z′`).
///
/// # Errors
/// [`Error::Convergence`] when Newton's method stalls.
pub fn l_plus_point(spec: &Genus0Spectrum, edge: &EdgeFrame, s: f64, guess: Option<Complex64>) -> Result<Complex64> {
    let (zp, _) = z_derivatives(spec, edge);
    let y = newton_root(s, guess.unwrap_or(cr(s) / zp), |y| (y * zp - I * 4.0 * y * y, zp - I * 8.0 * y))?;
    Ok(spec.e0() + y)
}

/// Point `k = Ē₀ + y_d` of `l⁻` on which `z_d(y_d) = s`.
///
/// # Errors
/// [`Error::Convergence`] when Newton's method stalls.
pub fn l_minus_point(spec: &Genus0Spectrum, edge: &EdgeFrame, s: f64, guess: Option<Complex64>) -> Result<Complex64> {
    let (_, zdp) = z_derivatives(spec, edge);
    let y = newton_root(s, guess.unwrap_or(cr(s) / zdp), |y| (y * zdp + I * 4.0 * y * y, zdp + I * 8.0 * y))?;
    Ok(spec.e0_bar() + y)
}

/// Samples `l⁺` from `E₀` until `|k − E₀|` reaches `radius`, in
/// `n_points` equal steps of `z`.
///
/// # Errors
/// [`Error::Domain`] for a non-positive radius or fewer than two points;
/// Newton failures.
pub fn track_l_plus(spec: &Genus0Spectrum, edge: &EdgeFrame, radius: f64, n_points: usize) -> Result<Vec<Complex64>> {
    if !(radius > 0.0) || n_points < 2 {
        return Err(Error::Domain("track_l_plus needs radius > 0 and at least two points"));
    }
    let (zp, _) = z_derivatives(spec, edge);
    // |z| ≈ |z′| |y| near the endpoint; overshoot slightly and stop at the radius.
    let s_max = 1.2 * zp.norm() * radius;
    let mut out = Vec::with_capacity(n_points);
    let mut guess = None;
    for j in 0..n_points {
        let s = s_max * j as f64 / (n_points - 1) as f64;
        let k = l_plus_point(spec, edge, s, guess)?;
        if (k - spec.e0()).norm() > radius {
            break;
        }
        guess = Some(k - spec.e0());
        out.push(k);
    }
    Ok(out)
}
