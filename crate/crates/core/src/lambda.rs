//! Point-interaction descriptions and the maps between them.
//!
//! A single point interaction is characterized either by four real physical
//! strengths (scalar, electrostatic, magnetostatic, pseudoscalar amplitudes)
//! or by a matching matrix
//!
//! ```text
//! Λ = e^{iφ} [ a   i b ]        a d − b c = 1,   φ ∈ [0, π)
//!            [ -i c  d ]
//! ```
//!
//! acting on the spinor as ψ(x⁺) = Λ ψ(x⁻). Both directions of the
//! correspondence are implemented here, together with the two-point
//! arrangements built from one base interaction by mirror (even) or
//! anti-mirror (odd) doubling.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::mat2::Mat2;
use crate::{ensure_finite, tol, Error, Result};

/// Physical strengths of one point interaction.
///
/// Infinite values are legal and mark the impermeable (decoupling) limits;
/// they are accepted by [`is_permeable`] and rejected with
/// [`Error::ImpermeableInteraction`] by every operation that needs a matching
/// matrix. NaN is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalStrengths {
    /// Scalar amplitude (couples to the mass term).
    pub scalar: f64,
    /// Electrostatic amplitude (couples to the energy term).
    pub electrostatic: f64,
    /// Magnetostatic amplitude (pure phase jump).
    pub magnetostatic: f64,
    /// Pseudoscalar amplitude.
    pub pseudoscalar: f64,
}

impl PhysicalStrengths {
    /// # Errors
    ///
    /// [`Error::InvalidInput`] when any amplitude is NaN.
    pub fn new(scalar: f64, electrostatic: f64, magnetostatic: f64, pseudoscalar: f64) -> Result<Self> {
        for (v, name) in [
            (scalar, "scalar strength"),
            (electrostatic, "electrostatic strength"),
            (magnetostatic, "magnetostatic strength"),
            (pseudoscalar, "pseudoscalar strength"),
        ] {
            if v.is_nan() {
                return Err(Error::InvalidInput(format!("{name} is NaN")));
            }
        }
        Ok(Self { scalar, electrostatic, magnetostatic, pseudoscalar })
    }

    pub fn is_finite(&self) -> bool {
        self.scalar.is_finite()
            && self.electrostatic.is_finite()
            && self.magnetostatic.is_finite()
            && self.pseudoscalar.is_finite()
    }
}

/// Matching-matrix parameters (φ, a, b, c, d) of one point interaction.
///
/// `permeable == false` marks the decoupling limit in which the two sides of
/// the point do not communicate; such a value carries no usable entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    /// Phase φ ∈ [0, π).
    pub phase: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub permeable: bool,
}

impl LambdaParams {
    /// Builds a permeable matching matrix, enforcing a d − b c = 1 and
    /// φ ∈ [0, π).
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on non-finite entries, a phase outside
    /// [0, π), or a unimodularity defect beyond [`tol::UNIMODULAR_TOL`]
    /// (relative to the entry scale).
    pub fn new(phase: f64, a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for (v, name) in [(phase, "phase"), (a, "a"), (b, "b"), (c, "c"), (d, "d")] {
            ensure_finite(v, name)?;
        }
        if !(0.0..PI).contains(&phase) {
            return Err(Error::InvalidInput(format!(
                "phase must lie in [0, pi), got {phase}"
            )));
        }
        let defect = (a * d - b * c - 1.0).abs();
        let scale = 1.0f64.max(a.abs() * d.abs() + b.abs() * c.abs());
        if defect > tol::UNIMODULAR_TOL * scale {
            return Err(Error::InvalidInput(format!(
                "a d - b c must equal 1, defect {defect:.3e} at scale {scale:.3e}"
            )));
        }
        Ok(Self { phase, a, b, c, d, permeable: true })
    }

    /// The decoupling-limit marker. It has no usable matrix entries.
    pub fn impermeable() -> Self {
        Self { phase: 0.0, a: f64::INFINITY, b: 0.0, c: 0.0, d: f64::INFINITY, permeable: false }
    }

    /// The free point (identity matching).
    pub fn free() -> Self {
        Self { phase: 0.0, a: 1.0, b: 0.0, c: 0.0, d: 1.0, permeable: true }
    }

    /// Assembles Λ = e^{iφ} [[a, ib], [-ic, d]].
    ///
    /// # Errors
    ///
    /// [`Error::ImpermeableInteraction`] on the decoupling marker.
    pub fn matrix(&self) -> Result<Mat2> {
        if !self.permeable {
            return Err(Error::ImpermeableInteraction(
                "matching matrix undefined for a decoupled point".into(),
            ));
        }
        let ph = Complex64::from_polar(1.0, self.phase);
        Ok(Mat2::new(
            ph * Complex64::new(self.a, 0.0),
            ph * Complex64::new(0.0, self.b),
            ph * Complex64::new(0.0, -self.c),
            ph * Complex64::new(self.d, 0.0),
        ))
    }
}

/// Permeability of a strengths quadruple: whether the point transmits at all.
///
/// A point is impermeable exactly when some amplitude is infinite or when the
/// amplitudes sit on the decoupling variety (no magnetostatic part and
/// scalar² + pseudoscalar² − electrostatic² − 4 = 0). NaN inputs are reported
/// impermeable as well; constructive operations reject them separately.
pub fn is_permeable(s: &PhysicalStrengths) -> bool {
    if !s.is_finite() {
        return false;
    }
    let planar = s.scalar * s.scalar + s.pseudoscalar * s.pseudoscalar
        - s.electrostatic * s.electrostatic
        - 4.0;
    s.magnetostatic != 0.0 || planar != 0.0
}

/// Converts physical strengths to matching-matrix parameters.
///
/// The decomposition is unique once φ is folded into [0, π): writing
/// x = B² + W² − 4 − A₀² + A₁² and y = 4A₁ (B, A₀, A₁, W being the scalar,
/// electrostatic, magnetostatic and pseudoscalar amplitudes), the phase is
/// the angle of (x, y) modulo π and the entries carry a common sign η chosen
/// from A₁ (or from x when A₁ = 0).
///
/// # Errors
///
/// [`Error::InvalidInput`] on NaN, [`Error::ImpermeableInteraction`] on
/// infinite amplitudes or on the decoupling variety.
pub fn strengths_to_lambda(s: &PhysicalStrengths) -> Result<LambdaParams> {
    for (v, name) in [
        (s.scalar, "scalar strength"),
        (s.electrostatic, "electrostatic strength"),
        (s.magnetostatic, "magnetostatic strength"),
        (s.pseudoscalar, "pseudoscalar strength"),
    ] {
        if v.is_nan() {
            return Err(Error::InvalidInput(format!("{name} is NaN")));
        }
    }
    if !s.is_finite() {
        return Err(Error::ImpermeableInteraction(
            "infinite strength marks a decoupled point".into(),
        ));
    }
    let (b_s, a0, a1, w) = (s.scalar, s.electrostatic, s.magnetostatic, s.pseudoscalar);
    let x = b_s * b_s + w * w - 4.0 - a0 * a0 + a1 * a1;
    let y = 4.0 * a1;
    let den = x.hypot(y);
    if den == 0.0 {
        return Err(Error::ImpermeableInteraction(format!(
            "strengths ({b_s}, {a0}, {a1}, {w}) lie on the decoupling variety"
        )));
    }
    let eta = if a1 != 0.0 { a1.signum() } else { x.signum() };

    let a = eta * (a0 * a0 - a1 * a1 - b_s * b_s - (w - 2.0) * (w - 2.0)) / den;
    let b = eta * 4.0 * (a0 - b_s) / den;
    let c = -eta * 4.0 * (a0 + b_s) / den;
    let d = eta * (a0 * a0 - a1 * a1 - b_s * b_s - (w + 2.0) * (w + 2.0)) / den;

    let mut phase = y.atan2(x);
    if phase < 0.0 {
        phase += PI;
    }
    if phase >= PI {
        phase -= PI;
    }
    // atan2 rounding can leave phase at -0.0; normalize.
    if phase == 0.0 {
        phase = 0.0;
    }
    LambdaParams::new(phase, a, b, c, d)
}

/// Recovers physical strengths from matching-matrix parameters.
///
/// # Errors
///
/// [`Error::ImpermeableInteraction`] on the decoupling marker and
/// [`Error::DegenerateDenominator`] when 2 cos φ + a + d vanishes (the
/// decomposition is undefined there).
pub fn lambda_to_strengths(p: &LambdaParams) -> Result<PhysicalStrengths> {
    if !p.permeable {
        return Err(Error::ImpermeableInteraction(
            "strength decomposition undefined for a decoupled point".into(),
        ));
    }
    let den = 2.0 * p.phase.cos() + p.d + p.a;
    let scale = 1.0 + p.a.abs() + p.d.abs();
    if den.abs() <= tol::DEGENERATE_DENOMINATOR_FACTOR * scale {
        return Err(Error::DegenerateDenominator(den.abs()));
    }
    PhysicalStrengths::new(
        2.0 * (p.c + p.b) / den,
        2.0 * (p.c - p.b) / den,
        -4.0 * p.phase.sin() / den,
        2.0 * (p.d - p.a) / den,
    )
}

/// Spatial symmetry class of a two-point arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Mirror-symmetric pair.
    Even,
    /// Anti-mirror pair.
    Odd,
    /// No declared symmetry.
    General,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
            Parity::General => write!(f, "general"),
        }
    }
}

/// Two point interactions at x = ∓ separation/2 in a fixed mass background.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrangement {
    mass: f64,
    separation: f64,
    point1: LambdaParams,
    point2: LambdaParams,
    parity: Parity,
}

impl Arrangement {
    /// Builds an arrangement without any symmetry claim.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] unless mass > 0 and separation > 0;
    /// [`Error::ImpermeableInteraction`] when either point is decoupled.
    pub fn general(mass: f64, separation: f64, point1: LambdaParams, point2: LambdaParams) -> Result<Self> {
        Self::with_parity(mass, separation, point1, point2, Parity::General)
    }

    /// Builds an arrangement with an explicit parity tag, verifying that the
    /// second matrix actually realizes the claimed pattern.
    ///
    /// # Errors
    ///
    /// As [`Arrangement::general`], plus [`Error::InvalidInput`] when the
    /// claimed parity pattern does not hold entrywise.
    pub fn with_parity(
        mass: f64,
        separation: f64,
        point1: LambdaParams,
        point2: LambdaParams,
        parity: Parity,
    ) -> Result<Self> {
        ensure_finite(mass, "mass")?;
        ensure_finite(separation, "separation")?;
        if mass <= 0.0 {
            return Err(Error::InvalidInput(format!("mass must be positive, got {mass}")));
        }
        if separation <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "separation must be positive, got {separation}"
            )));
        }
        point1.matrix()?;
        let m2 = point2.matrix()?;
        let pattern = match parity {
            Parity::General => None,
            Parity::Even => Some(even_partner(&point1)?),
            Parity::Odd => Some(odd_partner(&point1)?),
        };
        if let Some(partner) = pattern {
            let expect = partner.matrix()?;
            let tol = tol::UNIMODULAR_TOL * 10.0 * (1.0 + expect.max_norm());
            if !m2.approx_eq(&expect, tol) {
                return Err(Error::InvalidInput(format!(
                    "second point does not realize the declared {parity} pattern"
                )));
            }
        }
        Ok(Self { mass, separation, point1, point2, parity })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    /// Position of the first point, x₁ = −separation/2.
    pub fn x1(&self) -> f64 {
        -0.5 * self.separation
    }

    /// Position of the second point, x₂ = +separation/2.
    pub fn x2(&self) -> f64 {
        0.5 * self.separation
    }

    pub fn point1(&self) -> &LambdaParams {
        &self.point1
    }

    pub fn point2(&self) -> &LambdaParams {
        &self.point2
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Same arrangement at a different separation.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] unless the new separation is positive.
    pub fn with_separation(&self, separation: f64) -> Result<Self> {
        Self::with_parity(self.mass, separation, self.point1, self.point2, self.parity)
    }
}

/// Mirror partner of a matching matrix: the parameters describing the same
/// physical point reflected through the origin, with the phase refolded into
/// [0, π).
fn even_partner(p: &LambdaParams) -> Result<LambdaParams> {
    if p.phase == 0.0 {
        LambdaParams::new(0.0, p.d, p.b, p.c, p.a)
    } else {
        LambdaParams::new(PI - p.phase, -p.d, -p.b, -p.c, -p.a)
    }
}

/// Anti-mirror partner: same diagonal, flipped couplings.
fn odd_partner(p: &LambdaParams) -> Result<LambdaParams> {
    LambdaParams::new(p.phase, p.a, -p.b, -p.c, p.d)
}

/// Mirror-symmetric pair built from one base interaction at x = −ℓ/2.
///
/// # Errors
///
/// Propagates the constructor errors of [`Arrangement::with_parity`].
pub fn make_even_arrangement(base: &LambdaParams, mass: f64, separation: f64) -> Result<Arrangement> {
    let partner = even_partner(base)?;
    Arrangement::with_parity(mass, separation, *base, partner, Parity::Even)
}

/// Anti-mirror pair built from one base interaction at x = −ℓ/2.
///
/// # Errors
///
/// Propagates the constructor errors of [`Arrangement::with_parity`].
pub fn make_odd_arrangement(base: &LambdaParams, mass: f64, separation: f64) -> Result<Arrangement> {
    let partner = odd_partner(base)?;
    Arrangement::with_parity(mass, separation, *base, partner, Parity::Odd)
}
