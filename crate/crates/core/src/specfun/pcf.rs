//! Parabolic cylinder functions.
//!
//! For `|z| ≥ ASYMPTOTIC_RADIUS` the large-`z` expansion is summed up to its
//! smallest term; past the Stokes lines `arg z = ±π/2` the second exponential
//! is included. Inside the disc the function is continued from a point where
//! it is known accurately by re-centred Taylor series of
//! `w'' = (z²/4 − a − ½) w`, always marching in the direction in which `D_a`
//! grows relative to the second solution:
//!
//! * `|arg z| ≤ π/4` (D_a recessive at infinity): inwards from the circle.
//! * `π/4 < |arg z| ≤ 3π/4`: outwards from the origin.
//! * `|arg z| > 3π/4`: through the connection formula, which maps the point
//!   into the two previous sectors.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::recip_gamma;
use crate::error::{Error, Result};
use crate::prelude::*;

/// Radius beyond which the asymptotic expansion is used directly.
pub const ASYMPTOTIC_RADIUS: f64 = 10.0;

/// Below this radius the origin data are continued directly in any sector.
const ORIGIN_RADIUS: f64 = 2.0;
const MAX_SERIES_TERMS: usize = 400;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// `D_a(z)`.
pub fn parabolic_cylinder_d(a: Complex64, z: Complex64) -> Complex64 {
    if z.norm() >= ASYMPTOTIC_RADIUS {
        asymptotic_scaled(a, z).0 * (-z * z / 4.0).exp()
    } else {
        interior(a, z).0
    }
}

/// `e^{z²/4} D_a(z)`; finite where `D_a` itself would overflow.
pub fn parabolic_cylinder_d_scaled(a: Complex64, z: Complex64) -> Complex64 {
    if z.norm() >= ASYMPTOTIC_RADIUS {
        asymptotic_scaled(a, z).0
    } else {
        interior(a, z).0 * (z * z / 4.0).exp()
    }
}

/// Diagnostic evaluation: inside the annulus `0.75R ≤ |z| ≤ 1.5R`
/// (`R = ASYMPTOTIC_RADIUS`) both the truncated asymptotic series and the
/// Taylor continuation are computed and compared.
///
/// # Errors
/// [`Error::Accuracy`] when they differ by more than `1e-8` relatively.
pub fn parabolic_cylinder_d_checked(a: Complex64, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if !(0.75 * ASYMPTOTIC_RADIUS..=1.5 * ASYMPTOTIC_RADIUS).contains(&r) {
        return Ok(parabolic_cylinder_d(a, z));
    }
    let (asym, _) = asymptotic_scaled(a, z);
    let cont = continued(a, z, 2.0 * r).0 * (z * z / 4.0).exp();
    let discrepancy = (asym - cont).norm() / cont.norm().max(f64::MIN_POSITIVE);
    if discrepancy > 1e-8 {
        return Err(Error::Accuracy { what: "parabolic cylinder regimes", discrepancy });
    }
    Ok(asym * (-z * z / 4.0).exp())
}

/// `(D_a(z), D_a'(z))` for `|z| < ASYMPTOTIC_RADIUS`.
fn interior(a: Complex64, z: Complex64) -> (Complex64, Complex64) {
    continued(a, z, ASYMPTOTIC_RADIUS)
}

/// Stable continuation to `z`; the recessive sector starts from radius `r_start`.
fn continued(a: Complex64, z: Complex64, r_start: f64) -> (Complex64, Complex64) {
    let r = z.norm();
    if r <= ORIGIN_RADIUS {
        return from_origin(a, z);
    }
    let theta = z.arg();
    if theta.abs() <= FRAC_PI_4 {
        let start = z * (r_start / r);
        let (d, dp) = asymptotic_pair(a, start);
        taylor_march(a, start, d, dp, z)
    } else if theta.abs() <= 3.0 * FRAC_PI_4 {
        from_origin(a, z)
    } else {
        // D_a(z) = e^{∓πai} D_a(−z) + √(2π)/Γ(−a) e^{∓π(a+1)i/2} D_{−a−1}(±iz)
        let s = if theta > 0.0 { 1.0 } else { -1.0 };
        let rot = c(0.0, s);
        let (d1, d1p) = continued(a, -z, r_start);
        let (d2, d2p) = continued(-a - 1.0, rot * z, r_start);
        let e1 = (a * c(0.0, -s * PI)).exp();
        let e2 = recip_gamma(-a) * SQRT_2PI * ((a + 1.0) * c(0.0, -s * FRAC_PI_2)).exp();
        (e1 * d1 + e2 * d2, -e1 * d1p + e2 * rot * d2p)
    }
}

fn from_origin(a: Complex64, z: Complex64) -> (Complex64, Complex64) {
    let sqrt_pi = PI.sqrt();
    let d0 = (a * (0.5 * core::f64::consts::LN_2)).exp() * sqrt_pi * recip_gamma((ONE - a) * 0.5);
    let dp0 = -((a + 1.0) * (0.5 * core::f64::consts::LN_2)).exp() * sqrt_pi * recip_gamma(-a * 0.5);
    taylor_march(a, ZERO, d0, dp0, z)
}

/// Marches `(w, w')` from `z0` to `z1` along the segment with local Taylor steps.
fn taylor_march(a: Complex64, z0: Complex64, w0: Complex64, dw0: Complex64, z1: Complex64) -> (Complex64, Complex64) {
    let total = z1 - z0;
    let len = total.norm();
    if len == 0.0 {
        return (w0, dw0);
    }
    let dir = total / len;
    let rate0 = 1.0 + a.norm().sqrt();
    let (mut w, mut dw) = (w0, dw0);
    let mut done = 0.0;
    while done < len {
        let center = z0 + dir * done;
        let h_max = 1.0 / (rate0 + 0.5 * center.norm());
        let step = (len - done).min(h_max);
        let end = if done + step >= len { z1 } else { z0 + dir * (done + step) };
        let h = end - center;
        let (nw, ndw) = taylor_step(a, center, w, dw, h);
        w = nw;
        dw = ndw;
        done += step;
    }
    (w, dw)
}

fn taylor_step(a: Complex64, center: Complex64, w: Complex64, dw: Complex64, h: Complex64) -> (Complex64, Complex64) {
    let q0 = center * center / 4.0 - a - 0.5;
    let q1 = center / 2.0;
    let q2 = 0.25;
    let h2 = h * h;
    let (c0, c1, c2) = (h2 * q0, h2 * h * q1, h2 * h2 * q2);
    // e_k = c_k h^k with c_k the Taylor coefficients at `center`.
    let mut e = [ZERO, ZERO, w, dw * h];
    let mut sum = e[2] + e[3];
    let mut dsum = e[3];
    let mut biggest = e[2].norm().max(e[3].norm());
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let next = (c0 * e[2] + c1 * e[1] + c2 * e[0]) / ((kf + 2.0) * (kf + 1.0));
        // shift: e[0]=e_{k-2}, e[1]=e_{k-1}, e[2]=e_k, e[3]=e_{k+1}
        e = [e[1], e[2], e[3], next];
        sum += next;
        dsum += next * (kf + 2.0);
        biggest = biggest.max(next.norm());
        k += 1;
        let small = e[2].norm() + e[3].norm() + e[1].norm();
        if k >= 6 && small <= 1e-18 * biggest {
            break;
        }
        if k >= MAX_SERIES_TERMS {
            break;
        }
    }
    (sum, dsum / h)
}

/// `Σ_j (−1)^j (a)_{(2j)} / (j! (2z²)^j)` up to its smallest term; also
/// returns the magnitude of the first omitted term.
fn series_recessive(a: Complex64, z: Complex64) -> (Complex64, f64) {
    let w = (z * z * 2.0).inv();
    let mut term = ONE;
    let mut sum = ONE;
    for j in 0..MAX_SERIES_TERMS {
        let jf = j as f64;
        let next = -term * (a - 2.0 * jf) * (a - 2.0 * jf - 1.0) * w / (jf + 1.0);
        let m = next.norm();
        if m == 0.0 {
            return (sum, 0.0);
        }
        if m >= term.norm() && j > 0 {
            return (sum, m);
        }
        sum += next;
        term = next;
        if m <= f64::EPSILON * 1e-2 * sum.norm() {
            return (sum, m);
        }
    }
    (sum, term.norm())
}

/// `Σ_j (a+1)_{2j} / (j! (2z²)^j)` (rising factorials) up to its smallest term.
fn series_dominant(a: Complex64, z: Complex64) -> (Complex64, f64) {
    let w = (z * z * 2.0).inv();
    let mut term = ONE;
    let mut sum = ONE;
    for j in 0..MAX_SERIES_TERMS {
        let jf = j as f64;
        let next = term * (a + 1.0 + 2.0 * jf) * (a + 2.0 + 2.0 * jf) * w / (jf + 1.0);
        let m = next.norm();
        if m == 0.0 {
            return (sum, 0.0);
        }
        if m >= term.norm() && j > 0 {
            return (sum, m);
        }
        sum += next;
        term = next;
        if m <= f64::EPSILON * 1e-2 * sum.norm() {
            return (sum, m);
        }
    }
    (sum, term.norm())
}

/// `e^{z²/4} D_a(z)` from the large-`z` expansion, with a relative
/// truncation bound.
fn asymptotic_scaled(a: Complex64, z: Complex64) -> (Complex64, f64) {
    let lz = z.ln();
    let (s1, b1) = series_recessive(a, z);
    let mut value = (a * lz).exp() * s1;
    let mut bound = b1;
    let theta = lz.im;
    if theta.abs() > FRAC_PI_2 {
        let s = if theta > 0.0 { 1.0 } else { -1.0 };
        let (s2, b2) = series_dominant(a, z);
        let coef = -recip_gamma(-a) * SQRT_2PI * (a * c(0.0, s * PI)).exp();
        let second = coef * (z * z / 2.0 - (a + 1.0) * lz).exp() * s2;
        bound = bound.max(b2 * second.norm() / value.norm().max(f64::MIN_POSITIVE));
        value += second;
    }
    (value, bound)
}

fn asymptotic_pair(a: Complex64, z: Complex64) -> (Complex64, Complex64) {
    let damp = (-z * z / 4.0).exp();
    let d = asymptotic_scaled(a, z).0 * damp;
    let dm1 = asymptotic_scaled(a - 1.0, z).0 * damp;
    (d, -z / 2.0 * d + a * dm1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_complex;

    fn d(a: Complex64, z: Complex64) -> Complex64 {
        parabolic_cylinder_d(a, z)
    }

    #[test]
    fn order_zero_is_gaussian() {
        for z in [cr(2.0), cr(0.0), c(1.0, 1.0), c(-3.0, 0.5), c(4.0, -4.0), c(12.0, 1.0)] {
            let expect = (-z * z / 4.0).exp();
            assert!((d(ZERO, z) - expect).norm() <= 1e-13 * (1.0 + expect.norm()), "z={z}");
        }
        assert!((d(ZERO, cr(2.0)) - cr((-1.0f64).exp())).norm() < 1e-15);
    }

    #[test]
    fn hermite_orders() {
        // D_1(z) = z e^{-z²/4}, D_2(z) = (z² − 1) e^{-z²/4}
        for z in [c(0.3, 0.2), c(-5.0, 1.0), c(3.0, -6.0), c(-7.5, -0.2), c(9.0, 0.0)] {
            let g = (-z * z / 4.0).exp();
            let e1 = z * g;
            let e2 = (z * z - 1.0) * g;
            assert!((d(ONE, z) - e1).norm() <= 1e-12 * (1.0 + e1.norm()), "z={z}");
            assert!((d(cr(2.0), z) - e2).norm() <= 1e-12 * (1.0 + e2.norm()), "z={z}");
        }
    }

    #[test]
    fn minus_one_order_is_erfc() {
        // D_{-1}(x) = e^{x²/4} √(π/2) erfc(x/√2); at x = 0: √(π/2)
        let v = d(cr(-1.0), ZERO);
        assert!((v - cr((PI / 2.0).sqrt())).norm() < 1e-14);
    }

    #[test]
    fn recurrence_sample() {
        let a = c(0.3, 0.2);
        let z = c(1.5, 0.5);
        let r = d(a + 1.0, z) - z * d(a, z) + a * d(a - 1.0, z);
        assert!(r.norm() < 1e-12);
    }

    #[test]
    fn origin_values() {
        let a = c(0.4, -0.7);
        let expect = (a * 0.5 * core::f64::consts::LN_2).exp() * PI.sqrt()
            / gamma_complex((ONE - a) * 0.5).unwrap();
        assert!((d(a, ZERO) - expect).norm() < 1e-14);
    }

    #[test]
    fn regimes_agree_in_overlap() {
        for a in [c(0.0, -0.11), c(-1.0, 0.11), c(0.5, 1.0), c(-2.3, 0.0)] {
            for k in 0..16 {
                let th = -PI + (k as f64 + 0.5) * PI / 8.0;
                for r in [8.0, 10.0, 13.0] {
                    let z = Complex64::from_polar(r, th);
                    parabolic_cylinder_d_checked(a, z).unwrap();
                }
            }
        }
    }

    #[test]
    fn continuity_across_radius() {
        let a = c(0.2, 0.3);
        for k in 0..12 {
            let th = -PI + (k as f64 + 0.25) * PI / 6.0;
            let inner = Complex64::from_polar(ASYMPTOTIC_RADIUS * (1.0 - 1e-12), th);
            let outer = Complex64::from_polar(ASYMPTOTIC_RADIUS, th);
            let vi = parabolic_cylinder_d_scaled(a, inner);
            let vo = parabolic_cylinder_d_scaled(a, outer);
            assert!((vi - vo).norm() <= 1e-10 * vo.norm(), "th={th}");
        }
    }
}
