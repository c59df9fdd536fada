use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::prelude::*;

/// Tolerances for the adaptive quadrature engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target.
    pub rel_tol: f64,
    /// Maximum number of panel bisections.
    pub max_subdivisions: usize,
    /// Truncation point of half-line integrals.
    pub tail_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
            tail_cutoff: 100.0,
        }
    }
}

impl QuadratureSpec {
    /// Validated constructor.
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize, tail_cutoff: f64) -> Result<Self> {
        let q = Self { abs_tol, rel_tol, max_subdivisions, tail_cutoff };
        q.validate()?;
        Ok(q)
    }

    /// Checks the invariants `abs_tol, rel_tol, tail_cutoff > 0`.
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.tail_cutoff > 0.0) {
            return Err(Error::Domain("quadrature tolerances and tail cutoff must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Domain("max_subdivisions must be positive"));
        }
        Ok(())
    }

    /// Copy with both tolerances set to `tol`.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).norm();
    if !(value.re.is_finite() && value.im.is_finite()) {
        err = f64::INFINITY;
    }
    Panel { a, b, value, err, resabs: resabs * half.abs() }
}

/// Integrates `f` over consecutive panels `[p₀,p₁], [p₁,p₂], …` with a
/// global adaptive Gauss–Kronrod (7/15) scheme.
///
/// The error target is `max(abs_tol, rel_tol·|I|)`, floored at a small
/// multiple of machine precision times `∫|f|` so that unreachable targets do
/// not exhaust the subdivision budget.
///
/// # Errors
/// [`Error::Quadrature`] when the budget is exhausted or `f` is not finite.
pub fn integrate_panels<F: Fn(f64) -> Complex64>(f: F, points: &[f64], q: &QuadratureSpec) -> Result<Complex64> {
    let mut heap = BinaryHeap::new();
    let mut total = ZERO;
    let mut err_total = 0.0;
    let mut resabs = 0.0;
    for w in points.windows(2) {
        if w[1] > w[0] {
            let p = gauss_kronrod(&f, w[0], w[1]);
            total += p.value;
            err_total += p.err;
            resabs += p.resabs;
            heap.push(p);
        }
    }
    let mut splits = 0usize;
    loop {
        let tol = q.abs_tol.max(q.rel_tol * total.norm()).max(50.0 * f64::EPSILON * resabs);
        if err_total <= tol {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if !worst.err.is_finite() && splits >= q.max_subdivisions {
            return Err(Error::Quadrature { estimate: worst.err, tolerance: tol });
        }
        if splits >= q.max_subdivisions {
            return Err(Error::Quadrature { estimate: err_total, tolerance: tol });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel can no longer be bisected in floating point.
            err_total -= worst.err;
            total -= worst.value;
            resabs -= worst.resabs;
            let frozen = Panel { err: 0.0, ..worst };
            total += frozen.value;
            resabs += frozen.resabs;
            heap.push(frozen);
            continue;
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err_total += left.err + right.err - worst.err;
        resabs += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
        splits += 1;
    }
    let panels: Vec<Panel> = heap.into_vec();
    let mut sum = ZERO;
    for p in &panels {
        if !p.err.is_finite() {
            return Err(Error::Quadrature { estimate: p.err, tolerance: q.abs_tol });
        }
        sum += p.value;
    }
    Ok(sum)
}

/// `∫_a^b f(s) ds`.
///
/// # Errors
/// See [`integrate_panels`].
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, q: &QuadratureSpec) -> Result<Complex64> {
    integrate_panels(f, &[a, b], q)
}

/// `∫_a^∞ f(s) ds` through `s = a + u/(1−u)`; `breaks` are extra points of
/// reduced smoothness in the `s` variable.
///
/// # Errors
/// See [`integrate_panels`].
pub fn integrate_to_infinity<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    breaks: &[f64],
    q: &QuadratureSpec,
) -> Result<Complex64> {
    let pts = mapped_points(breaks.iter().filter(|&&s| s > a).map(|&s| s - a));
    integrate_panels(
        |u| {
            let v = 1.0 - u;
            f(a + u / v) / (v * v)
        },
        &pts,
        q,
    )
}

/// `∫_{-∞}^b f(s) ds` through `s = b − u/(1−u)`.
///
/// # Errors
/// See [`integrate_panels`].
pub fn integrate_from_neg_infinity<F: Fn(f64) -> Complex64>(
    f: F,
    b: f64,
    breaks: &[f64],
    q: &QuadratureSpec,
) -> Result<Complex64> {
    let pts = mapped_points(breaks.iter().filter(|&&s| s < b).map(|&s| b - s));
    integrate_panels(
        |u| {
            let v = 1.0 - u;
            f(b - u / v) / (v * v)
        },
        &pts,
        q,
    )
}

fn mapped_points(distances: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut pts: Vec<f64> = core::iter::once(0.0)
        .chain(distances.map(|d| d / (1.0 + d)))
        .chain(core::iter::once(1.0))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}
