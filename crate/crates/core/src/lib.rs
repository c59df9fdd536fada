//! Leading-edge asymptotics for the focusing nonlinear Schrödinger equation
//!
//! ```text
//! i q_t + q_xx + 2|q|² q = 0,    q(x, 0) = B e^{-2iAx} for x < 0,  0 for x ≥ 0
//! ```
//!
//! with a genus-0 (plane-wave) background whose band endpoint is
//! `E₀ = A + iB`. For `A < 0` the step opens a dispersive shock wave whose
//! leading edge moves with speed `C = −4A` and resolves into a train of
//! asymptotic solitons sitting on a slowly decaying oscillatory background.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: complex Gamma, parabolic cylinder functions `D_a(z)`,
//!   monic Laguerre polynomials of index ½, adaptive quadrature and Cauchy
//!   transforms.
//! * [`spectrum`]: the genus-0 spectral curve and the explicit
//!   Baker–Akhiezer matrix `Φ^p`.
//! * [`scattering`]: closed-form scattering data `a, b, r, f`, the scalar
//!   functions `δ`, `χ`, `ν`, the jump matrix `J`, and the edge scaling frame.
//! * [`parametrix`]: Laguerre and parabolic-cylinder model matrices and the
//!   local coordinates linking them to the spectral plane.
//! * [`edge_asymptotics`]: soliton index selection, the pole-removal
//!   coefficients and the soliton/oscillatory terms `q_sol`, `q_par`.
//!
//! Everything here is a pure function of its inputs. The crate is `no_std`
//! and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]
// NaN must fail range checks, and published coefficients keep their digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod edge_asymptotics;
pub mod error;
pub mod matrix;
pub mod parametrix;
pub mod scattering;
pub mod specfun;
pub mod spectrum;

mod prelude;

pub use error::{Error, Result};
pub use matrix::Matrix2;
pub use num_complex::Complex64;
