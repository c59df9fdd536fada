//! Parabolic-cylinder model problem at the stationary point.
//!
//! `Ψ` is assembled from the scaled functions `e^{z²/4}D_a(z)`; the factors
//! `e^{∓iλ²}` then appear only as the explicit `e^{−iλ²σ₃}` and cancel
//! exactly in `P_PC`. `λ^{iν}` is the principal power (cut along the
//! negative real axis, where `P_PC` has no jump).

use core::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::matrix::Matrix2;
use crate::prelude::*;
use crate::specfun::{gamma_complex, parabolic_cylinder_d_scaled};

/// Angular tolerance for deciding that `λ` lies on a ray of `Σ_PC`.
const RAY_TOL: f64 = 1e-12;

/// Constants of the parabolic-cylinder model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PCParams {
    /// `r₀`.
    pub r0: Complex64,
    /// `ρ₀`.
    pub rho0: Complex64,
    /// `ν = ln(1 + r₀ρ₀)/(2π)`.
    pub nu: Complex64,
    /// `u⁺ = 2^{iν}e^{3πν/4}`.
    pub u_plus: Complex64,
    /// `u⁻ = 2^{iν}e^{−πν/4}`.
    pub u_minus: Complex64,
    /// `v⁺ = 2^{−iν}e^{−πν/4}`.
    pub v_plus: Complex64,
    /// `v⁻ = 2^{−iν}e^{3πν/4}`.
    pub v_minus: Complex64,
    /// `β₁ = ρ₀Γ(1−iν)2^{2iν}e^{−πν/2}/√(2π)`.
    pub beta1: Complex64,
    /// `β₂ = r₀Γ(1+iν)2^{−2iν}e^{−πν/2}/√(2π)`.
    pub beta2: Complex64,
}

impl PCParams {
    /// # Errors
    /// [`Error::Domain`] when `1 + r₀ρ₀` vanishes; Gamma poles.
    pub fn new(r0: Complex64, rho0: Complex64) -> Result<Self> {
        let base = ONE + r0 * rho0;
        if base.norm() == 0.0 {
            return Err(Error::Domain("1 + r0 rho0 must not vanish"));
        }
        let nu = base.ln() / (2.0 * PI);
        let ln2 = core::f64::consts::LN_2;
        let two_inu = (I * nu * ln2).exp();
        let e = |s: f64| (nu * (s * PI)).exp();
        let sqrt_2pi = (2.0 * PI).sqrt();
        let beta1 = rho0 * gamma_complex(ONE - I * nu)? * two_inu * two_inu * e(-0.5) / sqrt_2pi;
        let beta2 = r0 * gamma_complex(ONE + I * nu)? / (two_inu * two_inu) * e(-0.5) / sqrt_2pi;
        Ok(Self {
            r0,
            rho0,
            nu,
            u_plus: two_inu * e(0.75),
            u_minus: two_inu * e(-0.25),
            v_plus: e(-0.25) / two_inu,
            v_minus: e(0.75) / two_inu,
            beta1,
            beta2,
        })
    }
}

/// `Ψ̃(λ) = Ψ(λ) e^{iλ²σ₃}` from the upper (`upper = true`) or lower
/// half-plane formula, evaluated anywhere (the entries are entire).
pub fn pc_psi_half(p: &PCParams, lambda: Complex64, upper: bool) -> Matrix2 {
    let nu = p.nu;
    let ds = parabolic_cylinder_d_scaled;
    let rot = |a: f64| Complex64::from_polar(2.0, a * PI) * lambda;
    if upper {
        let z1 = rot(-0.75);
        let z2 = rot(-0.25);
        Matrix2::new(
            p.u_plus * ds(-I * nu, z1),
            p.beta1 * p.v_plus * ds(I * nu - 1.0, z2),
            p.beta2 * p.u_plus * ds(-I * nu - 1.0, z1),
            p.v_plus * ds(I * nu, z2),
        )
    } else {
        let z1 = rot(0.25);
        let z2 = rot(0.75);
        Matrix2::new(
            p.u_minus * ds(-I * nu, z1),
            -p.beta1 * p.v_minus * ds(I * nu - 1.0, z2),
            -p.beta2 * p.u_minus * ds(-I * nu - 1.0, z1),
            p.v_minus * ds(I * nu, z2),
        )
    }
}

/// `Ψ(λ)` for `Im λ ≠ 0`.
///
/// # Errors
/// [`Error::Domain`] on the real line; use [`pc_psi_half`] for boundary values.
pub fn pc_psi(p: &PCParams, lambda: Complex64) -> Result<Matrix2> {
    if lambda.im == 0.0 {
        return Err(Error::Domain("Psi has a jump on the real line; choose a half-plane"));
    }
    let tilde = pc_psi_half(p, lambda, lambda.im > 0.0);
    Ok(tilde * Matrix2::exp_sigma3(-I * lambda * lambda))
}

/// Side of a ray of `Σ_PC`; `Plus` is to the left of its orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RaySide {
    /// Left of the orientation.
    Plus,
    /// Right of the orientation.
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sector {
    Upper,      // (π/4, 3π/4)
    Lower,      // (−3π/4, −π/4)
    RightUp,    // (0, π/4)
    RightDown,  // (−π/4, 0)
    LeftUp,     // (3π/4, π]
    LeftDown,   // (−π, −3π/4)
}

fn sector_of(lambda: Complex64, side: Option<RaySide>) -> Result<(Sector, bool)> {
    let th = lambda.arg();
    // (ray angle, sector on the plus side, sector on the minus side)
    let rays = [
        (FRAC_PI_4, Sector::Upper, Sector::RightUp),
        (-FRAC_PI_4, Sector::RightDown, Sector::Lower),
        (3.0 * FRAC_PI_4, Sector::Upper, Sector::LeftUp),
        (-3.0 * FRAC_PI_4, Sector::LeftDown, Sector::Lower),
    ];
    for (angle, plus, minus) in rays {
        if (th - angle).abs() <= RAY_TOL {
            let sector = match side.ok_or(Error::Sector)? {
                RaySide::Plus => plus,
                RaySide::Minus => minus,
            };
            return Ok((sector, true));
        }
    }
    let s = if th > 3.0 * FRAC_PI_4 {
        Sector::LeftUp
    } else if th > FRAC_PI_4 {
        Sector::Upper
    } else if th >= 0.0 {
        Sector::RightUp
    } else if th >= -FRAC_PI_4 {
        Sector::RightDown
    } else if th >= -3.0 * FRAC_PI_4 {
        Sector::Lower
    } else {
        Sector::LeftDown
    };
    Ok((s, false))
}

/// `P_PC(λ)` off `Σ_PC`, or its boundary value from `side` on a ray.
///
/// # Errors
/// [`Error::Sector`] on a ray without a side, [`Error::Domain`] at `λ = 0`.
pub fn pc_p(p: &PCParams, lambda: Complex64, side: Option<RaySide>) -> Result<Matrix2> {
    if lambda == ZERO {
        return Err(Error::Domain("P_PC is singular at the origin"));
    }
    let (sector, _) = sector_of(lambda, side)?;
    let upper = matches!(sector, Sector::Upper | Sector::RightUp | Sector::LeftUp);
    let lam_inu = (I * p.nu * lambda.ln()).exp();
    let base = pc_psi_half(p, lambda, upper) * Matrix2::diag(lam_inu, lam_inu.inv());
    let e2 = (I * 2.0 * lambda * lambda).exp();
    let l2 = lam_inu * lam_inu;
    let factor = match sector {
        Sector::Upper | Sector::Lower => return Ok(base),
        Sector::RightUp => Matrix2::lower(-p.r0 * l2 * e2),
        Sector::RightDown => Matrix2::upper(p.rho0 / (l2 * e2)),
        Sector::LeftUp => Matrix2::upper(-p.rho0 / (ONE + p.r0 * p.rho0) / (l2 * e2)),
        Sector::LeftDown => Matrix2::lower(p.r0 / (ONE + p.r0 * p.rho0) * l2 * e2),
    };
    Ok(base * factor)
}

/// Jump `J_PC` on the ray `arg λ = angle` (one of `±π/4`, `±3π/4`).
///
/// # Errors
/// [`Error::Domain`] for other angles.
pub fn pc_ray_jump(p: &PCParams, lambda: Complex64, angle: f64) -> Result<Matrix2> {
    let l2 = (I * 2.0 * p.nu * lambda.ln()).exp();
    let e2 = (I * 2.0 * lambda * lambda).exp();
    let det = ONE + p.r0 * p.rho0;
    let tol = 1e-12;
    if (angle - 3.0 * FRAC_PI_4).abs() < tol {
        Ok(Matrix2::upper(-p.rho0 / det / (l2 * e2)))
    } else if (angle - FRAC_PI_4).abs() < tol {
        Ok(Matrix2::lower(-p.r0 * l2 * e2))
    } else if (angle + 3.0 * FRAC_PI_4).abs() < tol {
        Ok(Matrix2::lower(-p.r0 / det * l2 * e2))
    } else if (angle + FRAC_PI_4).abs() < tol {
        Ok(Matrix2::upper(-p.rho0 / (l2 * e2)))
    } else {
        Err(Error::Domain("not a ray of the parabolic-cylinder contour"))
    }
}

/// Large-`λ` expansion of `P_PC` up to `λ^{−order}` (`order` ≤ 4).
pub fn pc_asymptotic(p: &PCParams, lambda: Complex64, order: u32) -> Matrix2 {
    let nu = p.nu;
    let inv = lambda.inv();
    let e = |a: f64| Complex64::from_polar(1.0, a * PI);
    let mut m = Matrix2::identity();
    if order >= 1 {
        m.m12 += e(0.25) * p.beta1 * 0.5 * inv;
        m.m21 += e(0.75) * p.beta2 * 0.5 * inv;
    }
    if order >= 2 {
        let inv2 = inv * inv;
        m.m11 -= nu * (ONE + I * nu) / 8.0 * inv2;
        m.m22 -= nu * (ONE - I * nu) / 8.0 * inv2;
    }
    if order >= 3 {
        let inv3 = inv * inv * inv;
        m.m12 += e(-0.25) * p.beta1 * (ONE - I * nu) * (cr(2.0) - I * nu) / 16.0 * inv3;
        m.m21 += e(-0.75) * p.beta2 * (ONE + I * nu) * (cr(2.0) + I * nu) / 16.0 * inv3;
    }
    if order >= 4 {
        let inv4 = inv.powi(4);
        let ip = |k: f64| cr(k) + I * nu;
        let im = |k: f64| cr(k) - I * nu;
        m.m11 -= I * nu * ip(1.0) * ip(2.0) * ip(3.0) / 128.0 * inv4;
        m.m22 += I * nu * im(1.0) * im(2.0) * im(3.0) / 128.0 * inv4;
    }
    m
}
