//! Complex special functions and quadrature.
//!
//! All functions are pure; none allocate except the adaptive quadrature
//! work list.

mod cauchy;
mod gamma;
mod laguerre;
mod pcf;
mod quadrature;

pub use cauchy::{cauchy_halfline, cauchy_interval, AxisSide, Point};
pub use gamma::{gamma_complex, recip_gamma};
pub use laguerre::{laguerre_monic, laguerre_norm};
pub use pcf::{
    parabolic_cylinder_d, parabolic_cylinder_d_checked, parabolic_cylinder_d_scaled,
    ASYMPTOTIC_RADIUS,
};
pub use quadrature::{
    integrate, integrate_from_neg_infinity, integrate_panels, integrate_to_infinity,
    QuadratureSpec,
};
