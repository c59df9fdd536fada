use crate::prelude::*;

/// Monic generalized Laguerre polynomial `π_n(ζ)` of index ½.
///
/// `π_n = (-1)^n n! L_n^{(1/2)}`, generated by
/// `π_{k+1} = (ζ − 2k − 3/2) π_k − k(k + ½) π_{k−1}`.
pub fn laguerre_monic(n: u32, zeta: Complex64) -> Complex64 {
    let mut prev = ZERO;
    let mut cur = ONE;
    for k in 0..n {
        let kf = k as f64;
        let next = (zeta - (2.0 * kf + 1.5)) * cur - prev * (kf * (kf + 0.5));
        prev = cur;
        cur = next;
    }
    cur
}

/// `∫₀^∞ √s e^{-s} π_n(s)² ds = Γ(n + 3/2) n!`.
pub fn laguerre_norm(n: u32) -> f64 {
    let mut v = 0.5 * core::f64::consts::PI.sqrt();
    for k in 1..=n {
        let kf = k as f64;
        v *= (kf + 0.5) * kf;
    }
    v
}
