//! 2×2 complex matrices.

use core::ops::{Add, Mul, Neg, Sub};

use crate::prelude::*;

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    /// Entry (1,1).
    pub m11: Complex64,
    /// Entry (1,2).
    pub m12: Complex64,
    /// Entry (2,1).
    pub m21: Complex64,
    /// Entry (2,2).
    pub m22: Complex64,
}

impl Matrix2 {
    /// Builds a matrix from its entries.
    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    /// Identity.
    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    /// Zero matrix.
    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    /// Diagonal matrix.
    pub const fn diag(d1: Complex64, d2: Complex64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    /// `[[1, u], [0, 1]]`.
    pub const fn upper(u: Complex64) -> Self {
        Self::new(ONE, u, ZERO, ONE)
    }

    /// `[[1, 0], [l, 1]]`.
    pub const fn lower(l: Complex64) -> Self {
        Self::new(ONE, ZERO, l, ONE)
    }

    /// Pauli matrix σ₁.
    pub const fn sigma1() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    /// Pauli matrix σ₃.
    pub const fn sigma3() -> Self {
        Self::new(ONE, ZERO, ZERO, cr_const(-1.0))
    }

    /// `e^{wσ₃} = diag(e^w, e^{-w})`.
    pub fn exp_sigma3(w: Complex64) -> Self {
        Self::diag(w.exp(), (-w).exp())
    }

    /// Determinant.
    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Inverse; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == ZERO {
            return None;
        }
        Some(Self::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d))
    }

    /// Inverse of a unimodular matrix (adjugate), no division.
    pub fn adjugate(&self) -> Self {
        Self::new(self.m22, -self.m12, -self.m21, self.m11)
    }

    /// `σ₁ M σ₁`, i.e. both diagonals swapped.
    pub fn flip(&self) -> Self {
        Self::new(self.m22, self.m21, self.m12, self.m11)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.m11.conj(), self.m12.conj(), self.m21.conj(), self.m22.conj())
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

const fn cr_const(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl Default for Matrix2 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        self.scale(cr(-1.0))
    }
}

impl Mul<Complex64> for Matrix2 {
    type Output = Matrix2;
    fn mul(self, s: Complex64) -> Matrix2 {
        self.scale(s)
    }
}
