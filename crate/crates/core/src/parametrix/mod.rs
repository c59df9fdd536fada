//! Local model problems.
//!
//! * [`laguerre_rhp`]: the Laguerre matrices `L`, `L_d` solving the model
//!   problems at the band endpoints, with their large-`ζ` coefficients.
//! * [`parabolic`]: the parabolic-cylinder matrices `Ψ`, `P_PC` at the
//!   stationary point.
//! * [`frame`]: local coordinates `y, z, ζ, λ` attaching both models to the
//!   spectral plane.

pub mod frame;
pub mod laguerre_rhp;
pub mod parabolic;

pub use frame::{frame_at, l_minus_point, l_plus_point, track_l_plus, LocalFrame};
pub use laguerre_rhp::{
    laguerre_expansion_coeffs, laguerre_l, laguerre_ld, weighted_cauchy, LaguerreCoeffs,
};
pub use parabolic::{pc_asymptotic, pc_p, pc_psi, pc_psi_half, pc_ray_jump, PCParams, RaySide};
