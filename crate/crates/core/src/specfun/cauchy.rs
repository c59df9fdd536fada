use alloc::vec::Vec;
use core::f64::consts::PI;

use super::quadrature::{integrate_panels, QuadratureSpec};
use crate::error::{Error, Result};
use crate::prelude::*;

/// Distance to the contour below which the singular part is subtracted.
const NEAR_AXIS: f64 = 1e-3;

/// Side of the real axis from which a boundary value is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisSide {
    /// Limit from `Im ζ > 0`.
    Above,
    /// Limit from `Im ζ < 0`.
    Below,
}

/// Evaluation point of a Cauchy transform over a real contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    /// A point of the complex plane off the contour.
    Off(Complex64),
    /// Boundary value at a real point of the contour.
    Boundary(f64, AxisSide),
}

impl Point {
    /// The underlying complex coordinate.
    pub fn z(&self) -> Complex64 {
        match *self {
            Point::Off(z) => z,
            Point::Boundary(s, _) => cr(s),
        }
    }

    fn side(&self) -> Option<AxisSide> {
        match *self {
            Point::Off(_) => None,
            Point::Boundary(_, side) => Some(side),
        }
    }
}

/// `∫_a^b ds/(s − ζ)` with the boundary-value convention of `p`.
fn log_kernel(a: f64, b: f64, p: Point) -> Complex64 {
    match p {
        Point::Off(z) => (cr(b) - z).ln() - (cr(a) - z).ln(),
        Point::Boundary(s, side) => {
            let re = ((b - s) / (s - a)).ln();
            match side {
                AxisSide::Above => c(re, PI),
                AxisSide::Below => c(re, -PI),
            }
        }
    }
}

fn distance_to_segment(z: Complex64, a: f64, b: f64) -> f64 {
    let x = z.re.clamp(a, b);
    (z - x).norm()
}

fn check_point(p: Point, a: f64, b: f64) -> Result<()> {
    match p {
        Point::Off(z) => {
            if z.im == 0.0 && z.re >= a && z.re <= b {
                return Err(Error::Domain("evaluation point on the contour; supply a side"));
            }
        }
        Point::Boundary(s, _) => {
            if !(s > a && s < b) {
                return Err(Error::Domain("boundary value requested outside the open contour"));
            }
        }
    }
    Ok(())
}

fn panel_points(a: f64, b: f64, extra: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut pts: Vec<f64> = core::iter::once(a)
        .chain(extra.filter(|&s| s > a && s < b))
        .chain(core::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Cauchy transform `(1/2πi) ∫_a^b f(s)/(s − ζ) ds` over a finite interval.
///
/// `breaks` lists interior points where `f` is not smooth. Within
/// `1e-3` of the interval, and for boundary values, `f(Re ζ)` is subtracted
/// and its contribution added back through the exact logarithm.
///
/// # Errors
/// [`Error::Domain`] for a point on the contour without a side,
/// [`Error::Quadrature`] from the integrator.
pub fn cauchy_interval<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    p: Point,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    check_point(p, a, b)?;
    let z = p.z();
    let scale = 1.0 / (2.0 * PI * I);
    if p.side().is_none() && distance_to_segment(z, a, b) >= NEAR_AXIS {
        let pts = panel_points(a, b, breaks.iter().copied());
        return Ok(integrate_panels(|s| f(s) / (s - z), &pts, q)? * scale);
    }
    let s0 = z.re.clamp(a, b);
    let f0 = f(s0);
    let pts = panel_points(a, b, breaks.iter().copied().chain(core::iter::once(s0)));
    let regular = integrate_panels(|s| (f(s) - f0) / (s - z), &pts, q)?;
    Ok((regular + f0 * log_kernel(a, b, p)) * scale)
}

/// Half-line Cauchy transform `(1/2πi) ∫_0^∞ f(s)/(s − ζ) ds`.
///
/// The integral is truncated at `q.tail_cutoff` and computed in the variable
/// `u = √s`, which removes `√s` behaviour at the origin. `f` must decay fast
/// enough that the neglected tail is below tolerance; a crude bound
/// `|f(T)|/|T − ζ|` is checked.
///
/// # Errors
/// As [`cauchy_interval`], plus [`Error::Quadrature`] when the tail bound
/// exceeds the tolerance.
pub fn cauchy_halfline<F: Fn(f64) -> Complex64>(f: F, p: Point, q: &QuadratureSpec) -> Result<Complex64> {
    let t = q.tail_cutoff;
    check_point(p, 0.0, t)?;
    let z = p.z();
    let ut = t.sqrt();
    let scale = 1.0 / (2.0 * PI * I);
    let value = if p.side().is_none() && distance_to_segment(z, 0.0, t) >= NEAR_AXIS {
        let pts = panel_points(0.0, ut, core::iter::empty());
        integrate_panels(
            |u| {
                let s = u * u;
                f(s) * (2.0 * u) / (s - z)
            },
            &pts,
            q,
        )? * scale
    } else {
        let s0 = z.re.clamp(0.0, t);
        let f0 = f(s0);
        let pts = panel_points(0.0, ut, core::iter::once(s0.sqrt()));
        let regular = integrate_panels(
            |u| {
                let s = u * u;
                (f(s) - f0) * (2.0 * u) / (s - z)
            },
            &pts,
            q,
        )?;
        (regular + f0 * log_kernel(0.0, t, p)) * scale
    };
    let tail = f(t).norm() / (cr(t) - z).norm() / (2.0 * PI);
    let tol = q.abs_tol.max(q.rel_tol * value.norm());
    if tail > tol {
        return Err(Error::Quadrature { estimate: tail, tolerance: tol });
    }
    Ok(value)
}
