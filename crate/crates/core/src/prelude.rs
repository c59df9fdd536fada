pub(crate) use num_complex::Complex64;
#[allow(unused_imports)]
pub(crate) use num_traits::Float;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);
pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
