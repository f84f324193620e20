//! Minimal complex 2×2 matrix arithmetic.
//!
//! The whole formalism lives in C^{2×2}; a fixed-size hand-rolled type keeps
//! the hot loops allocation-free and the call sites explicit.

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex 2×2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e11: Complex64,
    pub e12: Complex64,
    pub e21: Complex64,
    pub e22: Complex64,
}

impl Mat2 {
    pub const fn new(e11: Complex64, e12: Complex64, e21: Complex64, e22: Complex64) -> Self {
        Self { e11, e12, e21, e22 }
    }

    pub fn identity() -> Self {
        Self::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.e11 * self.e22 - self.e12 * self.e21
    }

    pub fn trace(&self) -> Complex64 {
        self.e11 + self.e22
    }

    /// Exact 2×2 inverse.
    ///
    /// # Errors
    ///
    /// [`Error::SingularMatrix`] when |det| vanishes relative to the entry
    /// scale.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let scale = self.max_norm();
        if det.norm() <= f64::EPSILON * scale * scale {
            return Err(Error::SingularMatrix(det.norm()));
        }
        Ok(Self::new(
            self.e22 / det,
            -self.e12 / det,
            -self.e21 / det,
            self.e11 / det,
        ))
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.e11
            .norm()
            .max(self.e12.norm())
            .max(self.e21.norm())
            .max(self.e22.norm())
    }

    /// Entrywise comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.e11 - other.e11).norm() <= tol
            && (self.e12 - other.e12).norm() <= tol
            && (self.e21 - other.e21).norm() <= tol
            && (self.e22 - other.e22).norm() <= tol
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        [self.e11, self.e12, self.e21, self.e22]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.e11 * s, self.e12 * s, self.e21 * s, self.e22 * s)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: (Complex64, Complex64)) -> (Complex64, Complex64) {
        (
            self.e11 * v.0 + self.e12 * v.1,
            self.e21 * v.0 + self.e22 * v.1,
        )
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e11 * rhs.e11 + self.e12 * rhs.e21,
            self.e11 * rhs.e12 + self.e12 * rhs.e22,
            self.e21 * rhs.e11 + self.e22 * rhs.e21,
            self.e21 * rhs.e12 + self.e22 * rhs.e22,
        )
    }
}
