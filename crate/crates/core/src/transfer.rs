//! Transfer and connection matrices for two-point arrangements.
//!
//! Away from the thresholds E = ±m the spinor in each free region is a
//! combination of plane waves; the transfer matrix M maps the coefficient
//! pair on the far left to the pair on the far right by conjugating each
//! matching matrix with the plane-wave basis
//!
//! ```text
//! P(k, x) = [ e^{ikx}      e^{-ikx}   ]        t = k / (E + m)
//!           [ t e^{ikx}   -t e^{-ikx} ]
//! ```
//!
//! so that M = [P⁻¹(k,x₂) Λ₂ P(k,x₂)] · [P⁻¹(k,x₁) Λ₁ P(k,x₁)]. At the
//! thresholds the plane-wave basis degenerates and dedicated polynomial bases
//! take its place ([`critical_transfer`], [`supercritical_transfer`]).

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::lambda::{Arrangement, LambdaParams, Parity};
use crate::mat2::Mat2;
use crate::{ensure_finite, tol, Error, Result};

/// Relativistic momentum k(E) = √(E − m) √(E + m) on principal branches.
///
/// The two-factor form places the branch cuts on (−∞, −m] and (−∞, m] so
/// that gap energies E ∈ (−m, m) give k on the positive imaginary axis and
/// the lower half-plane maps continuously.
pub fn branch_momentum(energy: Complex64, mass: f64) -> Complex64 {
    (energy - mass).sqrt() * (energy + mass).sqrt()
}

/// An energy point together with its branch momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEnergy {
    energy: Complex64,
    momentum: Complex64,
    mass: f64,
}

impl ComplexEnergy {
    /// General complex energy with the principal branch momentum.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on non-finite energy or non-positive mass.
    pub fn new(energy: Complex64, mass: f64) -> Result<Self> {
        ensure_finite(mass, "mass")?;
        if mass <= 0.0 {
            return Err(Error::InvalidInput(format!("mass must be positive, got {mass}")));
        }
        if !(energy.re.is_finite() && energy.im.is_finite()) {
            return Err(Error::InvalidInput(format!("energy must be finite, got {energy}")));
        }
        Ok(Self { energy, momentum: branch_momentum(energy, mass), mass })
    }

    /// Real energy outside or inside the gap.
    ///
    /// # Errors
    ///
    /// As [`ComplexEnergy::new`].
    pub fn real(energy: f64, mass: f64) -> Result<Self> {
        Self::new(Complex64::new(energy, 0.0), mass)
    }

    /// Gap energy |E| < m with the momentum placed exactly on the positive
    /// imaginary axis, k = iκ, κ = √(m² − E²), avoiding branch-evaluation
    /// dust on the real part.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] unless |E| < m.
    pub fn gap(energy: f64, mass: f64) -> Result<Self> {
        ensure_finite(mass, "mass")?;
        ensure_finite(energy, "energy")?;
        if mass <= 0.0 {
            return Err(Error::InvalidInput(format!("mass must be positive, got {mass}")));
        }
        if energy.abs() >= mass {
            return Err(Error::InvalidInput(format!(
                "gap energy needs |E| < m, got E = {energy}, m = {mass}"
            )));
        }
        let kappa = (mass * mass - energy * energy).sqrt();
        Ok(Self {
            energy: Complex64::new(energy, 0.0),
            momentum: Complex64::new(0.0, kappa),
            mass,
        })
    }

    pub fn energy(&self) -> Complex64 {
        self.energy
    }

    pub fn momentum(&self) -> Complex64 {
        self.momentum
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
}

/// Plane-wave basis matrix P(k, x).
///
/// # Errors
///
/// [`Error::SingularMatrix`] when |k| falls under the threshold-degeneracy
/// guard [`tol::MOMENTUM_SINGULAR_FACTOR`] · m (use the dedicated threshold
/// matrices there).
pub fn plane_wave_matrix(en: &ComplexEnergy, x: f64) -> Result<Mat2> {
    let k = en.momentum();
    if k.norm() < tol::MOMENTUM_SINGULAR_FACTOR * en.mass() {
        return Err(Error::SingularMatrix(k.norm()));
    }
    let t = k / (en.energy() + en.mass());
    let right = (Complex64::i() * k * x).exp();
    let left = (-Complex64::i() * k * x).exp();
    Ok(Mat2::new(right, left, t * right, -t * left))
}

/// Inverse plane-wave basis, written in closed form: det P = −2t.
fn plane_wave_inverse(en: &ComplexEnergy, x: f64) -> Result<Mat2> {
    let k = en.momentum();
    if k.norm() < tol::MOMENTUM_SINGULAR_FACTOR * en.mass() {
        return Err(Error::SingularMatrix(k.norm()));
    }
    let t = k / (en.energy() + en.mass());
    let right = (Complex64::i() * k * x).exp();
    let left = (-Complex64::i() * k * x).exp();
    let half = Complex64::new(0.5, 0.0);
    Ok(Mat2::new(
        half / right,
        half / (t * right),
        half / left,
        -half / (t * left),
    ))
}

/// Which basis a transfer matrix is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Plane-wave coefficients at general energy.
    Scattering,
    /// Polynomial basis at the upper threshold E = +m.
    Critical,
    /// Polynomial basis at the lower threshold E = −m.
    Supercritical,
}

/// A transfer matrix with its basis tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub entries: Mat2,
    pub kind: MatrixKind,
}

/// Coefficient-space factor of a single point: P⁻¹(k, x) Λ P(k, x).
fn point_factor(point: &LambdaParams, en: &ComplexEnergy, x: f64) -> Result<Mat2> {
    let lambda = point.matrix()?;
    let p = plane_wave_matrix(en, x)?;
    let p_inv = plane_wave_inverse(en, x)?;
    Ok(p_inv * lambda * p)
}

/// Transfer matrix of two arbitrary points at positions x₁ < x₂.
///
/// # Errors
///
/// [`Error::InvalidInput`] unless x₁ < x₂; basis and permeability errors as
/// in [`plane_wave_matrix`] and [`LambdaParams::matrix`].
pub fn transfer_matrix_between(
    point1: &LambdaParams,
    point2: &LambdaParams,
    en: &ComplexEnergy,
    x1: f64,
    x2: f64,
) -> Result<Mat2> {
    ensure_finite(x1, "x1")?;
    ensure_finite(x2, "x2")?;
    if x1 >= x2 {
        return Err(Error::InvalidInput(format!(
            "point positions must satisfy x1 < x2, got {x1} and {x2}"
        )));
    }
    let n1 = point_factor(point1, en, x1)?;
    let n2 = point_factor(point2, en, x2)?;
    Ok(n2 * n1)
}

/// Transfer matrix of an arrangement at general energy.
///
/// # Errors
///
/// As [`transfer_matrix_between`].
pub fn transfer_matrix(arr: &Arrangement, en: &ComplexEnergy) -> Result<TransferMatrix> {
    let entries = transfer_matrix_between(arr.point1(), arr.point2(), en, arr.x1(), arr.x2())?;
    Ok(TransferMatrix { entries, kind: MatrixKind::Scattering })
}

/// Spinor-space connection matrix Λ₂ P(x₂) P⁻¹(x₁) Λ₁, the basis-free map
/// ψ(x₁⁻) ↦ ψ(x₂⁺). It equals P(x₂) M P⁻¹(x₁).
///
/// # Errors
///
/// As [`transfer_matrix`].
pub fn connection_matrix(arr: &Arrangement, en: &ComplexEnergy) -> Result<Mat2> {
    let l1 = arr.point1().matrix()?;
    let l2 = arr.point2().matrix()?;
    let p2 = plane_wave_matrix(en, arr.x2())?;
    let p1_inv = plane_wave_inverse(en, arr.x1())?;
    Ok(l2 * p2 * p1_inv * l1)
}

/// Sum of the two matching-matrix phases; det M = e^{2i(φ₁+φ₂)}.
pub fn total_phase(arr: &Arrangement) -> f64 {
    arr.point1().phase + arr.point2().phase
}

/// Basis at the upper threshold E = +m, columns (1 + 2imx·0 ...) built from
/// the polynomial solutions: P(x) = [[2imx, 1], [1, 0]].
fn critical_basis(mass: f64, x: f64) -> (Mat2, Mat2) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let imx = Complex64::new(0.0, 2.0 * mass * x);
    let p = Mat2::new(imx, one, one, zero);
    let p_inv = Mat2::new(zero, one, one, -imx);
    (p, p_inv)
}

/// Basis at the lower threshold E = −m: P(x) = [[1, 0], [−2imx, 1]].
fn supercritical_basis(mass: f64, x: f64) -> (Mat2, Mat2) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let imx = Complex64::new(0.0, 2.0 * mass * x);
    let p = Mat2::new(one, zero, -imx, one);
    let p_inv = Mat2::new(one, zero, imx, one);
    (p, p_inv)
}

fn threshold_transfer(
    arr: &Arrangement,
    basis: fn(f64, f64) -> (Mat2, Mat2),
    kind: MatrixKind,
) -> Result<TransferMatrix> {
    let mut m = Mat2::identity();
    for (point, x) in [(arr.point1(), arr.x1()), (arr.point2(), arr.x2())] {
        let lambda = point.matrix()?;
        let (p, p_inv) = basis(arr.mass(), x);
        m = (p_inv * lambda * p) * m;
    }
    Ok(TransferMatrix { entries: m, kind })
}

/// Transfer matrix at E = +m in the threshold basis. An interaction is
/// critical (hosts a state at the upper gap edge) exactly when the (1,2)
/// entry vanishes.
///
/// # Errors
///
/// Permeability errors from [`LambdaParams::matrix`].
pub fn critical_transfer(arr: &Arrangement) -> Result<TransferMatrix> {
    threshold_transfer(arr, critical_basis, MatrixKind::Critical)
}

/// Transfer matrix at E = −m in the threshold basis; the (1,2) entry
/// vanishes exactly for supercritical interactions.
///
/// # Errors
///
/// Permeability errors from [`LambdaParams::matrix`].
pub fn supercritical_transfer(arr: &Arrangement) -> Result<TransferMatrix> {
    threshold_transfer(arr, supercritical_basis, MatrixKind::Supercritical)
}

/// Symmetry type of the single interaction that emerges when the separation
/// shrinks to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    /// Mirror-compatible single point.
    Even,
    /// Anti-mirror pair collapsing to a zero-coupling (diagonal) point.
    Odd,
    /// Pure gauge phase, e^{2iφ} times the identity.
    GaugePhase,
    /// The product matrix does not fit the standard single-point form.
    Undefined,
}

/// Zero-separation limit of the arrangement: the product Λ₂ Λ₁ (the
/// plane-wave factors cancel pointwise as ℓ → 0⁺) plus its symmetry class.
///
/// # Errors
///
/// [`Error::InvalidInput`] when the arrangement carries no parity tag: the
/// classification below is defined for the mirror and anti-mirror families.
pub fn single_point_limit(arr: &Arrangement) -> Result<(Mat2, ParityClass)> {
    let product = arr.point2().matrix()? * arr.point1().matrix()?;
    let p = arr.point1();
    let scale = 1.0 + p.a.abs() + p.d.abs();
    let tol_abs = tol::PARITY_CLASS_TOL * scale;
    let class = match arr.parity() {
        Parity::General => {
            return Err(Error::InvalidInput(
                "zero-separation classification requires an even or odd arrangement".into(),
            ))
        }
        Parity::Even => ParityClass::Even,
        Parity::Odd => {
            if (p.a - p.d).abs() <= tol_abs {
                ParityClass::GaugePhase
            } else if p.b.abs() <= tol_abs && p.c.abs() <= tol_abs {
                ParityClass::Odd
            } else if (p.a + p.d).abs() <= tol_abs
                && (p.phase <= tol::PARITY_CLASS_TOL
                    || (p.phase - FRAC_PI_2).abs() <= tol::PARITY_CLASS_TOL)
            {
                ParityClass::Even
            } else {
                ParityClass::Undefined
            }
        }
    };
    Ok((product, class))
}

/// Reflection and transmission data of a left-incident wave at one real
/// energy outside the gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint {
    pub energy: f64,
    /// Real branch momentum (negative below the lower continuum edge).
    pub momentum: f64,
    pub reflection_amp: Complex64,
    pub transmission_amp: Complex64,
    /// |r|².
    pub reflection: f64,
    /// |t|².
    pub transmission: f64,
    /// |r|² + |t|² − 1.
    pub unitarity_defect: f64,
}

/// Scattering amplitudes r = −M₂₁/M₂₂ and t = det M / M₂₂ at real |E| > m.
///
/// # Errors
///
/// [`Error::InvalidInput`] unless |E| > m strictly (with the momentum
/// degeneracy guard), plus the usual basis errors.
pub fn scattering_amplitudes(arr: &Arrangement, energy: f64) -> Result<ScatteringPoint> {
    ensure_finite(energy, "energy")?;
    let m = arr.mass();
    if energy.abs() <= m {
        return Err(Error::InvalidInput(format!(
            "scattering needs |E| > m, got E = {energy}, m = {m}"
        )));
    }
    let en = ComplexEnergy::real(energy, m)?;
    let tm = transfer_matrix(arr, &en)?;
    let m22 = tm.entries.e22;
    if m22.norm() == 0.0 {
        return Err(Error::SingularMatrix(0.0));
    }
    let r = -tm.entries.e21 / m22;
    let t = tm.entries.det() / m22;
    let reflection = r.norm_sqr();
    let transmission = t.norm_sqr();
    Ok(ScatteringPoint {
        energy,
        momentum: en.momentum().re,
        reflection_amp: r,
        transmission_amp: t,
        reflection,
        transmission,
        unitarity_defect: reflection + transmission - 1.0,
    })
}

/// Full scattering matrix S = (1/M₂₂) [[−M₂₁, 1], [det M, M₁₂]].
///
/// # Errors
///
/// As [`scattering_amplitudes`].
pub fn s_matrix(arr: &Arrangement, energy: f64) -> Result<Mat2> {
    ensure_finite(energy, "energy")?;
    let m = arr.mass();
    if energy.abs() <= m {
        return Err(Error::InvalidInput(format!(
            "scattering needs |E| > m, got E = {energy}, m = {m}"
        )));
    }
    let en = ComplexEnergy::real(energy, m)?;
    let tm = transfer_matrix(arr, &en)?;
    let m22 = tm.entries.e22;
    if m22.norm() == 0.0 {
        return Err(Error::SingularMatrix(0.0));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(Mat2::new(
        -tm.entries.e21 / m22,
        one / m22,
        tm.entries.det() / m22,
        tm.entries.e12 / m22,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{make_even_arrangement, make_odd_arrangement};

    fn coupling2_even() -> Arrangement {
        let base = LambdaParams::new(0.0, 1.0, 0.0, 2.0, 1.0).unwrap();
        make_even_arrangement(&base, 2.0, 1.0).unwrap()
    }

    #[test]
    fn branch_momentum_gap_is_imaginary() {
        let k = branch_momentum(Complex64::new(0.5, 0.0), 2.0);
        assert!(k.re.abs() < 1e-15);
        assert!((k.im - (4.0f64 - 0.25).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn branch_momentum_above_gap_is_real_positive() {
        let k = branch_momentum(Complex64::new(3.0, 0.0), 2.0);
        assert!(k.im.abs() < 1e-15);
        assert!((k.re - 5.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn branch_momentum_below_gap_is_real_negative() {
        let k = branch_momentum(Complex64::new(-3.0, 0.0), 2.0);
        assert!(k.im.abs() < 1e-12);
        assert!((k.re + 5.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn plane_wave_inverse_matches() {
        let en = ComplexEnergy::new(Complex64::new(3.1, -0.7), 2.0).unwrap();
        let p = plane_wave_matrix(&en, 0.37).unwrap();
        let p_inv = plane_wave_inverse(&en, 0.37).unwrap();
        assert!((p * p_inv).approx_eq(&Mat2::identity(), 1e-13));
        assert!((p_inv * p).approx_eq(&Mat2::identity(), 1e-13));
    }

    #[test]
    fn determinant_law() {
        let arr = coupling2_even();
        let en = ComplexEnergy::new(Complex64::new(2.6, -0.4), 2.0).unwrap();
        let tm = transfer_matrix(&arr, &en).unwrap();
        let expect = Complex64::from_polar(1.0, 2.0 * total_phase(&arr));
        assert!((tm.entries.det() - expect).norm() < tol::DET_PHASE_TOL);
    }

    #[test]
    fn connection_matrix_factorizations_agree() {
        let arr = coupling2_even();
        let en = ComplexEnergy::new(Complex64::new(3.4, 0.9), 2.0).unwrap();
        let gamma = connection_matrix(&arr, &en).unwrap();
        let tm = transfer_matrix(&arr, &en).unwrap();
        let p2 = plane_wave_matrix(&en, arr.x2()).unwrap();
        let p1_inv = plane_wave_inverse(&en, arr.x1()).unwrap();
        let via_transfer = p2 * tm.entries * p1_inv;
        assert!(gamma.approx_eq(&via_transfer, tol::CONNECTION_TOL * gamma.max_norm().max(1.0)));
    }

    #[test]
    fn free_points_give_identity_transfer() {
        let arr = make_even_arrangement(&LambdaParams::free(), 2.0, 1.0).unwrap();
        let en = ComplexEnergy::real(3.0, 2.0).unwrap();
        let tm = transfer_matrix(&arr, &en).unwrap();
        assert!(tm.entries.approx_eq(&Mat2::identity(), 1e-13));
    }

    #[test]
    fn unitarity_above_and_below_gap() {
        let arr = coupling2_even();
        for e in [2.3, 4.0, 17.5, -2.3, -9.0] {
            let sp = scattering_amplitudes(&arr, e).unwrap();
            assert!(
                sp.unitarity_defect.abs() < tol::UNITARITY_TOL,
                "unitarity defect {} at E = {e}",
                sp.unitarity_defect
            );
        }
    }

    #[test]
    fn scattering_inside_gap_rejected() {
        let arr = coupling2_even();
        assert!(scattering_amplitudes(&arr, 1.0).is_err());
        assert!(s_matrix(&arr, -2.0).is_err());
    }

    #[test]
    fn threshold_bases_are_inverse_pairs() {
        for x in [-0.5, 0.0, 0.8] {
            let (p, p_inv) = critical_basis(2.0, x);
            assert!((p * p_inv).approx_eq(&Mat2::identity(), 1e-15));
            let (q, q_inv) = supercritical_basis(2.0, x);
            assert!((q * q_inv).approx_eq(&Mat2::identity(), 1e-15));
        }
    }

    #[test]
    fn critical_transfer_entry_matches_closed_parity_form() {
        // Even pair with zero phases: the (1,2) entry modulus must equal
        // |2 c (a + c m l)|.
        let base = LambdaParams::new(0.0, 1.0, 0.0, -0.7, 1.0).unwrap();
        let arr = make_even_arrangement(&base, 2.0, 1.0).unwrap();
        let tm = critical_transfer(&arr).unwrap();
        let closed: f64 = 2.0 * (-0.7) * (1.0 + (-0.7) * 2.0 * 1.0);
        assert!((tm.entries.e12.norm() - closed.abs()).abs() < 1e-12);
    }

    #[test]
    fn supercritical_transfer_entry_matches_closed_parity_form() {
        // Even pair: |M12| at E = -m equals |2 b (d + b m l)|.
        let base = LambdaParams::new(0.0, 1.0, 0.4, 0.0, 1.0).unwrap();
        let arr = make_even_arrangement(&base, 2.0, 1.0).unwrap();
        let tm = supercritical_transfer(&arr).unwrap();
        let closed: f64 = 2.0 * 0.4 * (1.0 + 0.4 * 2.0 * 1.0);
        assert!((tm.entries.e12.norm() - closed.abs()).abs() < 1e-12);
    }

    #[test]
    fn threshold_transfer_matches_continuum_extrapolation() {
        // The spinor-space connection matrix is continuous in E; transforming
        // it into the threshold basis at E = m(1 + eps) and letting eps -> 0
        // must reproduce critical_transfer. Richardson extrapolation in eps
        // keeps the oracle honest without tiny-momentum trouble.
        let base = crate::lambda::strengths_to_lambda(
            &crate::lambda::PhysicalStrengths::new(0.4, -0.9, 0.3, 0.6).unwrap(),
        )
        .unwrap();
        let arr = make_even_arrangement(&base, 2.0, 1.0).unwrap();

        let probe = |eps: f64| -> Mat2 {
            let en = ComplexEnergy::real(2.0 * (1.0 + eps), 2.0).unwrap();
            let gamma = connection_matrix(&arr, &en).unwrap();
            let (_, p2_inv) = critical_basis(2.0, arr.x2());
            let (p1, _) = critical_basis(2.0, arr.x1());
            p2_inv * gamma * p1
        };
        let coarse = probe(1e-4);
        let fine = probe(5e-5);
        // Richardson step: the probe behaves as exact + C*eps, so 2*fine -
        // coarse cancels the linear error term.
        let two = Complex64::new(2.0, 0.0);
        let extrap = Mat2::new(
            fine.e11 * two - coarse.e11,
            fine.e12 * two - coarse.e12,
            fine.e21 * two - coarse.e21,
            fine.e22 * two - coarse.e22,
        );
        let exact = critical_transfer(&arr).unwrap().entries;
        assert!(
            extrap.approx_eq(&exact, 1e-6 * (1.0 + exact.max_norm())),
            "extrapolated {extrap:?} vs exact {exact:?}"
        );
    }

    #[test]
    fn zero_separation_limit_even_stays_even() {
        let arr = coupling2_even();
        let (mat, class) = single_point_limit(&arr).unwrap();
        assert_eq!(class, ParityClass::Even);
        // [[1 + 2bc, 2ibd], [-2iac, 1 + 2bc]] with a = d = 1, b = 0, c = 2.
        assert!((mat.e11 - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((mat.e12).norm() < 1e-14);
        assert!((mat.e21 - Complex64::new(0.0, -4.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_separation_limit_odd_classification() {
        // a = d: pure gauge phase.
        let base = LambdaParams::new(0.0, 1.0, 0.5, 0.0, 1.0).unwrap();
        let arr = make_odd_arrangement(&base, 2.0, 1.0).unwrap();
        let (mat, class) = single_point_limit(&arr).unwrap();
        assert_eq!(class, ParityClass::GaugePhase);
        assert!(mat.approx_eq(&Mat2::identity(), 1e-13));

        // b = c = 0, a != d: diagonal (odd-compatible) point.
        let base = LambdaParams::new(0.0, 0.5, 0.0, 0.0, 2.0).unwrap();
        let arr = make_odd_arrangement(&base, 2.0, 1.0).unwrap();
        let (mat, class) = single_point_limit(&arr).unwrap();
        assert_eq!(class, ParityClass::Odd);
        assert!((mat.e11 - Complex64::new(0.25, 0.0)).norm() < 1e-14);
        assert!((mat.e22 - Complex64::new(4.0, 0.0)).norm() < 1e-14);

        // a = -d with zero phase: even-compatible point.
        let base = LambdaParams::new(0.0, 1.0, 0.5, -4.0, -1.0).unwrap();
        let arr = make_odd_arrangement(&base, 2.0, 1.0).unwrap();
        let (_, class) = single_point_limit(&arr).unwrap();
        assert_eq!(class, ParityClass::Even);

        // Generic parameters: no compatible single-point form.
        let base = LambdaParams::new(0.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        let arr = make_odd_arrangement(&base, 2.0, 1.0).unwrap();
        let (_, class) = single_point_limit(&arr).unwrap();
        assert_eq!(class, ParityClass::Undefined);
    }

    #[test]
    fn zero_separation_limit_matches_small_separation_connection() {
        let base = crate::lambda::strengths_to_lambda(
            &crate::lambda::PhysicalStrengths::new(0.4, -0.9, 0.3, 0.6).unwrap(),
        )
        .unwrap();
        let arr = make_even_arrangement(&base, 2.0, 1e-8).unwrap();
        let en = ComplexEnergy::real(3.0, 2.0).unwrap();
        let gamma = connection_matrix(&arr, &en).unwrap();
        let (limit, _) = single_point_limit(&arr).unwrap();
        assert!(
            gamma.approx_eq(&limit, 1e-6 * (1.0 + limit.max_norm())),
            "connection at l = 1e-8 should approach the product limit"
        );
    }

    #[test]
    fn general_parity_has_no_limit_classification() {
        let p1 = LambdaParams::new(0.0, 1.0, 0.0, 2.0, 1.0).unwrap();
        let p2 = LambdaParams::new(0.0, 0.5, 0.0, 0.0, 2.0).unwrap();
        let arr = Arrangement::general(2.0, 1.0, p1, p2).unwrap();
        assert!(single_point_limit(&arr).is_err());
    }
}
