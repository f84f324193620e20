//! Catalogue of the one-parameter special interactions.
//!
//! Six interaction kinds, each doubled into a mirror (even) or anti-mirror
//! (odd) pair, give twelve named cases. Each case carries
//!
//! - an exact base matching matrix as a function of its strength s,
//! - closed-form bound-state and resonance residuals,
//! - the strength-independent left-hand sides whose zero-imaginary-part
//!   curves organize the pole landscape,
//! - qualitative expectations: critical/supercritical strength sets,
//!   impermeable strengths, resonance behavior, invariance maps, and the
//!   energy-reflection dual.
//!
//! Base matrices (φ = 0 throughout; s is the case strength):
//!
//! ```text
//! equal mixture      a = d = 1,                    b = 0,            c = 2s
//! inverted mixture   a = d = 1,                    b = 2s,           c = 0
//! pseudoscalar       a = (2-s)/(2+s), d = 1/a,     b = c = 0
//! scalar             a = d = (4+s²)/(4-s²),        b = c = 4s/(4-s²)
//! electrostatic      a = d = (4-s²)/(4+s²),        b = -c = -4s/(4+s²)
//! magnetostatic      general conversion of the pure magnetostatic strengths
//! ```
//!
//! Pseudoscalar and scalar kinds decouple at s = ±2; the magnetostatic kind
//! is free-like (its pair transfers like the identity for every strength).

use num_complex::Complex64;

use crate::lambda::{
    make_even_arrangement, make_odd_arrangement, strengths_to_lambda, Arrangement, LambdaParams,
    Parity, PhysicalStrengths,
};
use crate::transfer::branch_momentum;
use crate::{ensure_finite, Error, Result};

/// Interaction kind of a special case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    EqualMixture,
    InvertedMixture,
    Pseudoscalar,
    Magnetostatic,
    Scalar,
    Electrostatic,
}

impl CaseKind {
    pub fn label(&self) -> &'static str {
        match self {
            CaseKind::EqualMixture => "equal-mixture",
            CaseKind::InvertedMixture => "inverted-mixture",
            CaseKind::Pseudoscalar => "pseudoscalar",
            CaseKind::Magnetostatic => "magnetostatic",
            CaseKind::Scalar => "scalar",
            CaseKind::Electrostatic => "electrostatic",
        }
    }
}

/// One of the twelve named cases: a kind plus a pair parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpecialCaseId {
    pub parity: Parity,
    pub kind: CaseKind,
}

impl SpecialCaseId {
    /// # Errors
    ///
    /// [`Error::InvalidInput`] when the parity is `General` (cases are
    /// defined for the two symmetric families).
    pub fn new(parity: Parity, kind: CaseKind) -> Result<Self> {
        if parity == Parity::General {
            return Err(Error::InvalidInput(
                "special cases are defined for even or odd parity".into(),
            ));
        }
        Ok(Self { parity, kind })
    }

    /// Parses `"even/scalar"`, `"odd/equal-mixture"`, and the like.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on anything else.
    pub fn parse(text: &str) -> Result<Self> {
        let (par, kind) = text
            .split_once('/')
            .ok_or_else(|| Error::InvalidInput(format!("case id needs a parity/kind pair, got {text:?}")))?;
        let parity = match par {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown parity {other:?}, expected \"even\" or \"odd\""
                )))
            }
        };
        let kind = match kind {
            "equal-mixture" => CaseKind::EqualMixture,
            "inverted-mixture" => CaseKind::InvertedMixture,
            "pseudoscalar" => CaseKind::Pseudoscalar,
            "magnetostatic" => CaseKind::Magnetostatic,
            "scalar" => CaseKind::Scalar,
            "electrostatic" => CaseKind::Electrostatic,
            other => return Err(Error::InvalidInput(format!("unknown case kind {other:?}"))),
        };
        Self::new(parity, kind)
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.parity, self.kind.label())
    }

    /// All twelve cases, even family first, in a fixed order.
    pub fn all() -> Vec<SpecialCaseId> {
        let kinds = [
            CaseKind::EqualMixture,
            CaseKind::InvertedMixture,
            CaseKind::Pseudoscalar,
            CaseKind::Magnetostatic,
            CaseKind::Scalar,
            CaseKind::Electrostatic,
        ];
        let mut out = Vec::with_capacity(12);
        for parity in [Parity::Even, Parity::Odd] {
            for kind in kinds {
                out.push(SpecialCaseId { parity, kind });
            }
        }
        out
    }
}

impl std::fmt::Display for SpecialCaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn validate_strength(kind: CaseKind, s: f64) -> Result<()> {
    ensure_finite(s, "strength")?;
    match kind {
        CaseKind::Pseudoscalar | CaseKind::Scalar if s == 2.0 || s == -2.0 => {
            Err(Error::ImpermeableInteraction(format!(
                "{} decouples at strength {s}",
                kind.label()
            )))
        }
        _ => Ok(()),
    }
}

/// Base matching matrix of a kind at strength s.
///
/// # Errors
///
/// [`Error::InvalidInput`] on non-finite s,
/// [`Error::ImpermeableInteraction`] at the decoupling strengths ±2 of the
/// pseudoscalar and scalar kinds.
pub fn base_lambda(kind: CaseKind, s: f64) -> Result<LambdaParams> {
    validate_strength(kind, s)?;
    match kind {
        CaseKind::EqualMixture => LambdaParams::new(0.0, 1.0, 0.0, 2.0 * s, 1.0),
        CaseKind::InvertedMixture => LambdaParams::new(0.0, 1.0, 2.0 * s, 0.0, 1.0),
        CaseKind::Pseudoscalar => {
            let a = (2.0 - s) / (2.0 + s);
            LambdaParams::new(0.0, a, 0.0, 0.0, 1.0 / a)
        }
        CaseKind::Magnetostatic => {
            strengths_to_lambda(&PhysicalStrengths::new(0.0, 0.0, s, 0.0)?)
        }
        CaseKind::Scalar => {
            let den = 4.0 - s * s;
            LambdaParams::new(0.0, (4.0 + s * s) / den, 4.0 * s / den, 4.0 * s / den, (4.0 + s * s) / den)
        }
        CaseKind::Electrostatic => {
            let den = 4.0 + s * s;
            LambdaParams::new(0.0, (4.0 - s * s) / den, -4.0 * s / den, 4.0 * s / den, (4.0 - s * s) / den)
        }
    }
}

/// Builds the two-point arrangement of a case.
///
/// # Errors
///
/// As [`base_lambda`], plus geometry errors from the arrangement
/// constructors.
pub fn instantiate(case: &SpecialCaseId, strength: f64, mass: f64, separation: f64) -> Result<Arrangement> {
    let base = base_lambda(case.kind, strength)?;
    match case.parity {
        Parity::Even => make_even_arrangement(&base, mass, separation),
        Parity::Odd => make_odd_arrangement(&base, mass, separation),
        Parity::General => Err(Error::InvalidInput("case parity cannot be general".into())),
    }
}

/// The real constant that the case's left-hand side must hit: the spectral
/// equations all read lhs(E) = term(s).
fn strength_term(case: &SpecialCaseId, s: f64) -> Result<f64> {
    let kind = case.kind;
    let needs_nonzero = matches!(
        (case.parity, kind),
        (_, CaseKind::Scalar)
            | (_, CaseKind::Electrostatic)
            | (Parity::Odd, CaseKind::EqualMixture)
            | (Parity::Odd, CaseKind::InvertedMixture)
    );
    if needs_nonzero && s == 0.0 {
        return Err(Error::InvalidStrength(format!(
            "{} has no closed-form equation at strength 0 (free point)",
            case.label()
        )));
    }
    Ok(match (case.parity, kind) {
        (Parity::Even, CaseKind::EqualMixture) | (Parity::Even, CaseKind::InvertedMixture) => s,
        (Parity::Even, CaseKind::Pseudoscalar) => {
            let r = 4.0 * s / (4.0 + s * s);
            r * r
        }
        (Parity::Odd, CaseKind::Pseudoscalar) => {
            let r = 4.0 * s / (4.0 + s * s);
            -(r * r)
        }
        (Parity::Even, CaseKind::Scalar) => (4.0 + s * s) / (4.0 * s),
        (Parity::Even, CaseKind::Electrostatic) => (s * s - 4.0) / (4.0 * s),
        (Parity::Odd, CaseKind::EqualMixture) | (Parity::Odd, CaseKind::InvertedMixture) => {
            1.0 / (s * s)
        }
        (Parity::Odd, CaseKind::Scalar) => {
            let t = (4.0 + s * s) / (4.0 * s);
            t * t
        }
        (Parity::Odd, CaseKind::Electrostatic) => {
            let t = (4.0 - s * s) / (4.0 * s);
            t * t
        }
        (_, CaseKind::Magnetostatic) => {
            return Err(Error::CaseHasNoResonances(case.label()))
        }
        (Parity::General, _) => unreachable!("case ids are never general"),
    })
}

/// A strength-independent left-hand side of a case's spectral equation,
/// defined on complex energy.
pub struct LocusBranch {
    pub label: &'static str,
    eval: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

impl LocusBranch {
    pub fn eval(&self, energy: Complex64) -> Complex64 {
        (self.eval)(energy)
    }
}

impl std::fmt::Debug for LocusBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocusBranch").field("label", &self.label).finish()
    }
}

/// Strength-independent left-hand sides of the case's spectral equation.
/// Their zero-imaginary-part sets are the locus curves along which poles
/// slide as the strength varies.
///
/// # Errors
///
/// [`Error::CaseHasNoResonances`] for the magnetostatic kind,
/// [`Error::InvalidInput`] on bad geometry.
pub fn locus_branches(case: &SpecialCaseId, mass: f64, separation: f64) -> Result<Vec<LocusBranch>> {
    ensure_finite(mass, "mass")?;
    ensure_finite(separation, "separation")?;
    if mass <= 0.0 || separation <= 0.0 {
        return Err(Error::InvalidInput(
            "mass and separation must be positive".into(),
        ));
    }
    let m = mass;
    let l = separation;
    let i = Complex64::i();
    let k = move |e: Complex64| branch_momentum(e, m);

    let branches: Vec<LocusBranch> = match (case.parity, case.kind) {
        (Parity::Even, CaseKind::EqualMixture) => vec![
            LocusBranch {
                label: "plus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    i * kk / ((m + e) * (1.0 + (i * kk * l).exp()))
                }),
            },
            LocusBranch {
                label: "minus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    i * kk / ((m + e) * (1.0 - (i * kk * l).exp()))
                }),
            },
        ],
        (Parity::Even, CaseKind::InvertedMixture) => vec![
            LocusBranch {
                label: "plus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    -(m + e) / (i * kk * (1.0 + (i * kk * l).exp()))
                }),
            },
            LocusBranch {
                label: "minus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    -(m + e) / (i * kk * (1.0 - (i * kk * l).exp()))
                }),
            },
        ],
        (_, CaseKind::Pseudoscalar) => vec![LocusBranch {
            label: "single",
            eval: Box::new(move |e| (-2.0 * i * k(e) * l).exp()),
        }],
        (_, CaseKind::Magnetostatic) => {
            return Err(Error::CaseHasNoResonances(case.label()))
        }
        (Parity::Even, CaseKind::Scalar) => vec![
            LocusBranch {
                label: "plus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    (-m + e * (i * kk * l).exp()) / (-(i * kk))
                }),
            },
            LocusBranch {
                label: "minus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    (-m - e * (i * kk * l).exp()) / (-(i * kk))
                }),
            },
        ],
        (Parity::Even, CaseKind::Electrostatic) => vec![
            LocusBranch {
                label: "plus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    (e + m * (i * kk * l).exp()) / (-(i * kk))
                }),
            },
            LocusBranch {
                label: "minus",
                eval: Box::new(move |e| {
                    let kk = k(e);
                    (e - m * (i * kk * l).exp()) / (-(i * kk))
                }),
            },
        ],
        (Parity::Odd, CaseKind::EqualMixture) => vec![LocusBranch {
            label: "single",
            eval: Box::new(move |e| {
                let kk = k(e);
                (m + e) / (m - e) * (1.0 - (2.0 * i * kk * l).exp())
            }),
        }],
        (Parity::Odd, CaseKind::InvertedMixture) => vec![LocusBranch {
            label: "single",
            eval: Box::new(move |e| {
                let kk = k(e);
                (m - e) / (m + e) * (1.0 - (2.0 * i * kk * l).exp())
            }),
        }],
        (Parity::Odd, CaseKind::Scalar) => vec![LocusBranch {
            label: "single",
            eval: Box::new(move |e| {
                let kk = k(e);
                (m * m - e * e * (2.0 * i * kk * l).exp()) / (m * m - e * e)
            }),
        }],
        (Parity::Odd, CaseKind::Electrostatic) => vec![LocusBranch {
            label: "single",
            eval: Box::new(move |e| {
                let kk = k(e);
                (e * e - m * m * (2.0 * i * kk * l).exp()) / (m * m - e * e)
            }),
        }],
        (Parity::General, _) => unreachable!("case ids are never general"),
    };
    Ok(branches)
}

/// Closed-form resonance residuals lhs(E) − term(s), one per branch.
///
/// # Errors
///
/// [`Error::CaseHasNoResonances`] for the magnetostatic kind,
/// [`Error::InvalidStrength`] where the term is undefined (strength 0 of the
/// scalar, electrostatic and odd mixture kinds), geometry errors as in
/// [`locus_branches`].
pub fn resonance_residual(
    case: &SpecialCaseId,
    strength: f64,
    mass: f64,
    separation: f64,
    energy: Complex64,
) -> Result<Vec<(&'static str, Complex64)>> {
    let term = strength_term(case, strength)?;
    let branches = locus_branches(case, mass, separation)?;
    Ok(branches
        .iter()
        .map(|br| (br.label, br.eval(energy) - term))
        .collect())
}

/// Closed-form bound-state residuals at a real gap energy, written exactly
/// as the per-case equations with κ = √(m² − E²) and τ = κ/(m + E):
///
/// ```text
/// even equal        τ + s (1 ± e^{-κℓ})
/// even inverted     1/τ + s (1 ∓ e^{-κℓ})
/// even pseudoscalar e^{κℓ} ∓ 4s/(4+s²)
/// even scalar       (-m ± E e^{-κℓ})/κ − (4+s²)/(4s)
/// even electrostatic (E ± m e^{-κℓ})/κ − (s²−4)/(4s)
/// odd equal         (m+E)/(m−E) (1 − e^{-2κℓ}) − 1/s²
/// odd inverted      (m−E)/(m+E) (1 − e^{-2κℓ}) − 1/s²
/// odd pseudoscalar  e^{2κℓ} + (4s/(4+s²))²
/// odd scalar        (m² − E² e^{-2κℓ})/κ² − ((4+s²)/(4s))²
/// odd electrostatic (E² − m² e^{-2κℓ})/κ² − ((4−s²)/(4s))²
/// ```
///
/// # Errors
///
/// [`Error::CaseHasNoBoundEquation`] for the magnetostatic kind,
/// [`Error::InvalidStrength`] where the equation is undefined,
/// [`Error::InvalidInput`] unless |E| < m.
pub fn bound_residual(
    case: &SpecialCaseId,
    strength: f64,
    mass: f64,
    separation: f64,
    energy: f64,
) -> Result<Vec<(&'static str, f64)>> {
    ensure_finite(energy, "energy")?;
    ensure_finite(mass, "mass")?;
    ensure_finite(separation, "separation")?;
    if mass <= 0.0 || separation <= 0.0 {
        return Err(Error::InvalidInput("mass and separation must be positive".into()));
    }
    if energy.abs() >= mass {
        return Err(Error::InvalidInput(format!(
            "bound residual needs |E| < m, got E = {energy}, m = {mass}"
        )));
    }
    if case.kind == CaseKind::Magnetostatic {
        return Err(Error::CaseHasNoBoundEquation(case.label()));
    }
    let s = strength;
    validate_strength(case.kind, s)?;
    let m = mass;
    let l = separation;
    let e = energy;
    let kappa = (m * m - e * e).sqrt();
    let tau = kappa / (m + e);
    let decay = (-kappa * l).exp();

    let out: Vec<(&'static str, f64)> = match (case.parity, case.kind) {
        (Parity::Even, CaseKind::EqualMixture) => vec![
            ("plus", tau + s * (1.0 + decay)),
            ("minus", tau + s * (1.0 - decay)),
        ],
        (Parity::Even, CaseKind::InvertedMixture) => vec![
            ("plus", 1.0 / tau + s * (1.0 + decay)),
            ("minus", 1.0 / tau + s * (1.0 - decay)),
        ],
        (Parity::Even, CaseKind::Pseudoscalar) => {
            let r = 4.0 * s / (4.0 + s * s);
            vec![
                ("plus", (kappa * l).exp() + r),
                ("minus", (kappa * l).exp() - r),
            ]
        }
        (Parity::Even, CaseKind::Scalar) => {
            let term = strength_term(case, s)?;
            vec![
                ("plus", (-m + e * decay) / kappa - term),
                ("minus", (-m - e * decay) / kappa - term),
            ]
        }
        (Parity::Even, CaseKind::Electrostatic) => {
            let term = strength_term(case, s)?;
            vec![
                ("plus", (e + m * decay) / kappa - term),
                ("minus", (e - m * decay) / kappa - term),
            ]
        }
        (Parity::Odd, CaseKind::EqualMixture) => {
            let term = strength_term(case, s)?;
            vec![("single", (m + e) / (m - e) * (1.0 - decay * decay) - term)]
        }
        (Parity::Odd, CaseKind::InvertedMixture) => {
            let term = strength_term(case, s)?;
            vec![("single", (m - e) / (m + e) * (1.0 - decay * decay) - term)]
        }
        (Parity::Odd, CaseKind::Pseudoscalar) => {
            let r = 4.0 * s / (4.0 + s * s);
            vec![("single", (2.0 * kappa * l).exp() + r * r)]
        }
        (Parity::Odd, CaseKind::Scalar) => {
            let term = strength_term(case, s)?;
            vec![(
                "single",
                (m * m - e * e * decay * decay) / (kappa * kappa) - term,
            )]
        }
        (Parity::Odd, CaseKind::Electrostatic) => {
            let term = strength_term(case, s)?;
            vec![(
                "single",
                (e * e - m * m * decay * decay) / (kappa * kappa) - term,
            )]
        }
        (_, CaseKind::Magnetostatic) | (Parity::General, _) => unreachable!(),
    };
    Ok(out)
}

/// A strength set on which a qualitative property holds.
#[derive(Debug, Clone, PartialEq)]
pub enum StrengthRule {
    /// Holds for every admissible strength.
    Always,
    /// Holds exactly at the listed strengths (sorted ascending).
    Only(Vec<f64>),
}

/// How the case's resonance poles behave.
#[derive(Debug, Clone, PartialEq)]
pub enum ResonanceBehavior {
    /// Free-like: no resonance equation at all.
    None,
    /// Poles reach the real axis at the listed (impermeable) strengths.
    RealAtStrengths(Vec<f64>),
    /// Poles approach the real axis only as |s| → ∞.
    RealOnlyAsStrengthDiverges,
    /// Poles stay strictly off the real axis for every finite strength.
    NeverReal,
}

/// A strength substitution s ↦ f(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrengthMap {
    Identity,
    /// s ↦ −s.
    Negate,
    /// s ↦ v/s.
    ScaledInverse(f64),
    /// s ↦ −v/s.
    NegatedScaledInverse(f64),
}

impl StrengthMap {
    pub fn apply(&self, s: f64) -> f64 {
        match self {
            StrengthMap::Identity => s,
            StrengthMap::Negate => -s,
            StrengthMap::ScaledInverse(v) => v / s,
            StrengthMap::NegatedScaledInverse(v) => -v / s,
        }
    }
}

/// Qualitative expectations of one case at fixed mass and separation.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseExpectation {
    pub case: SpecialCaseId,
    pub critical: StrengthRule,
    pub supercritical: StrengthRule,
    /// Strengths at which the single point decouples.
    pub impermeable_strengths: Vec<f64>,
    /// True when the pair transfers like a pure phase for every strength.
    pub free_like: bool,
    pub resonances: ResonanceBehavior,
    /// Strength maps that leave the spectrum invariant.
    pub invariances: Vec<StrengthMap>,
    /// Energy-reflection partner: (case, strength map) such that E is in the
    /// spectrum here iff −E is in the partner's spectrum at the mapped
    /// strength.
    pub dual: (SpecialCaseId, StrengthMap),
}

/// Qualitative expectations of a case.
///
/// # Errors
///
/// [`Error::InvalidInput`] on bad geometry.
pub fn expectations(case: &SpecialCaseId, mass: f64, separation: f64) -> Result<CaseExpectation> {
    ensure_finite(mass, "mass")?;
    ensure_finite(separation, "separation")?;
    if mass <= 0.0 || separation <= 0.0 {
        return Err(Error::InvalidInput("mass and separation must be positive".into()));
    }
    let ml = mass * separation;
    let even = |kind| SpecialCaseId { parity: Parity::Even, kind };
    let odd = |kind| SpecialCaseId { parity: Parity::Odd, kind };
    let same = (*case, StrengthMap::Identity);

    let exp = match (case.parity, case.kind) {
        (Parity::Even, CaseKind::EqualMixture) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Only(vec![-1.0 / (2.0 * ml), 0.0]),
            supercritical: StrengthRule::Always,
            impermeable_strengths: vec![],
            free_like: false,
            resonances: ResonanceBehavior::RealOnlyAsStrengthDiverges,
            invariances: vec![],
            dual: (even(CaseKind::InvertedMixture), StrengthMap::Identity),
        },
        (Parity::Even, CaseKind::InvertedMixture) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Always,
            supercritical: StrengthRule::Only(vec![-1.0 / (2.0 * ml), 0.0]),
            impermeable_strengths: vec![],
            free_like: false,
            resonances: ResonanceBehavior::RealOnlyAsStrengthDiverges,
            invariances: vec![],
            dual: (even(CaseKind::EqualMixture), StrengthMap::Identity),
        },
        (Parity::Even, CaseKind::Pseudoscalar) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Always,
            supercritical: StrengthRule::Always,
            impermeable_strengths: vec![-2.0, 2.0],
            free_like: false,
            resonances: ResonanceBehavior::RealAtStrengths(vec![-2.0, 2.0]),
            invariances: vec![StrengthMap::Negate, StrengthMap::ScaledInverse(4.0)],
            dual: same,
        },
        (Parity::Even, CaseKind::Magnetostatic) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Always,
            supercritical: StrengthRule::Always,
            impermeable_strengths: vec![],
            free_like: true,
            resonances: ResonanceBehavior::None,
            invariances: vec![StrengthMap::Negate],
            dual: same,
        },
        (Parity::Even, CaseKind::Scalar) => {
            let mut crit = vec![0.0];
            if ml > 1.0 {
                let root = (ml * ml - 1.0).sqrt();
                crit.push(-2.0 * (ml + root));
                crit.push(-2.0 * (ml - root));
            }
            crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
            CaseExpectation {
                case: *case,
                critical: StrengthRule::Only(crit.clone()),
                supercritical: StrengthRule::Only(crit),
                impermeable_strengths: vec![-2.0, 2.0],
                free_like: false,
                resonances: ResonanceBehavior::RealAtStrengths(vec![-2.0, 2.0]),
                invariances: vec![StrengthMap::ScaledInverse(4.0)],
                dual: same,
            }
        }
        (Parity::Even, CaseKind::Electrostatic) => {
            let root = (ml * ml + 1.0).sqrt();
            let mut crit = vec![0.0, 2.0 * (ml - root), 2.0 * (ml + root)];
            crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut sup = vec![0.0, 2.0 * (-ml - root), 2.0 * (-ml + root)];
            sup.sort_by(|a, b| a.partial_cmp(b).unwrap());
            CaseExpectation {
                case: *case,
                critical: StrengthRule::Only(crit),
                supercritical: StrengthRule::Only(sup),
                impermeable_strengths: vec![],
                free_like: false,
                resonances: ResonanceBehavior::NeverReal,
                invariances: vec![StrengthMap::NegatedScaledInverse(4.0)],
                dual: (even(CaseKind::Electrostatic), StrengthMap::Negate),
            }
        }
        (Parity::Odd, CaseKind::EqualMixture) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Only(vec![0.0]),
            supercritical: StrengthRule::Always,
            impermeable_strengths: vec![],
            free_like: false,
            resonances: ResonanceBehavior::RealOnlyAsStrengthDiverges,
            invariances: vec![StrengthMap::Negate],
            dual: (odd(CaseKind::InvertedMixture), StrengthMap::Identity),
        },
        (Parity::Odd, CaseKind::InvertedMixture) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Always,
            supercritical: StrengthRule::Only(vec![0.0]),
            impermeable_strengths: vec![],
            free_like: false,
            resonances: ResonanceBehavior::RealOnlyAsStrengthDiverges,
            invariances: vec![StrengthMap::Negate],
            dual: (odd(CaseKind::EqualMixture), StrengthMap::Identity),
        },
        (Parity::Odd, CaseKind::Pseudoscalar) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Always,
            supercritical: StrengthRule::Always,
            impermeable_strengths: vec![-2.0, 2.0],
            free_like: false,
            resonances: ResonanceBehavior::RealAtStrengths(vec![-2.0, 2.0]),
            invariances: vec![StrengthMap::Negate, StrengthMap::ScaledInverse(4.0)],
            dual: same,
        },
        (Parity::Odd, CaseKind::Magnetostatic) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Always,
            supercritical: StrengthRule::Always,
            impermeable_strengths: vec![],
            free_like: true,
            resonances: ResonanceBehavior::None,
            invariances: vec![StrengthMap::Negate],
            dual: same,
        },
        (Parity::Odd, CaseKind::Scalar) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Only(vec![0.0]),
            supercritical: StrengthRule::Only(vec![0.0]),
            impermeable_strengths: vec![-2.0, 2.0],
            free_like: false,
            resonances: ResonanceBehavior::RealAtStrengths(vec![-2.0, 2.0]),
            invariances: vec![
                StrengthMap::Negate,
                StrengthMap::ScaledInverse(4.0),
                StrengthMap::NegatedScaledInverse(4.0),
            ],
            dual: same,
        },
        (Parity::Odd, CaseKind::Electrostatic) => CaseExpectation {
            case: *case,
            critical: StrengthRule::Only(vec![0.0]),
            supercritical: StrengthRule::Only(vec![0.0]),
            impermeable_strengths: vec![],
            free_like: false,
            resonances: ResonanceBehavior::NeverReal,
            invariances: vec![
                StrengthMap::Negate,
                StrengthMap::ScaledInverse(4.0),
                StrengthMap::NegatedScaledInverse(4.0),
            ],
            dual: same,
        },
        (Parity::General, _) => unreachable!("case ids are never general"),
    };
    Ok(exp)
}

/// Number of gap bound states of a case, from the closed-form counting
/// rules. Strengths within a tiny band of a threshold strength (state
/// exactly at a gap edge) follow the strict-inequality reading; callers
/// probing knife edges should expect either neighbor count.
///
/// # Errors
///
/// [`Error::ImpermeableInteraction`] at decoupling strengths,
/// [`Error::InvalidInput`] on bad inputs.
pub fn bound_state_count(case: &SpecialCaseId, strength: f64, mass: f64, separation: f64) -> Result<usize> {
    ensure_finite(strength, "strength")?;
    ensure_finite(mass, "mass")?;
    ensure_finite(separation, "separation")?;
    if mass <= 0.0 || separation <= 0.0 {
        return Err(Error::InvalidInput("mass and separation must be positive".into()));
    }
    validate_strength(case.kind, strength)?;
    let s = strength;
    let ml = mass * separation;
    let n = match (case.parity, case.kind) {
        (Parity::Even, CaseKind::EqualMixture) | (Parity::Even, CaseKind::InvertedMixture) => {
            if s >= 0.0 {
                0
            } else if s < -1.0 / (2.0 * ml) {
                2
            } else {
                1
            }
        }
        (_, CaseKind::Pseudoscalar) | (_, CaseKind::Magnetostatic) => 0,
        (Parity::Even, CaseKind::Scalar) => {
            if s >= 0.0 {
                0
            } else {
                let mut n = 2;
                if ml > 1.0 {
                    let root = (ml * ml - 1.0).sqrt();
                    let lo = -2.0 * (ml + root);
                    let hi = -2.0 * (ml - root);
                    if s > lo && s < hi {
                        n += 2;
                    }
                }
                n
            }
        }
        (Parity::Even, CaseKind::Electrostatic) => {
            if s == 0.0 {
                0
            } else {
                let root = (ml * ml + 1.0).sqrt();
                let extra = if s > 0.0 {
                    let sup = 2.0 * (-ml + root);
                    let crit = 2.0 * (ml + root);
                    s > sup && s < crit
                } else {
                    let sup = 2.0 * (-ml - root);
                    let crit = 2.0 * (ml - root);
                    s > sup && s < crit
                };
                1 + usize::from(extra)
            }
        }
        (Parity::Odd, CaseKind::EqualMixture) | (Parity::Odd, CaseKind::InvertedMixture) => {
            usize::from(s != 0.0)
        }
        (Parity::Odd, CaseKind::Scalar) | (Parity::Odd, CaseKind::Electrostatic) => {
            if s != 0.0 {
                2
            } else {
                0
            }
        }
        (Parity::General, _) => unreachable!("case ids are never general"),
    };
    Ok(n)
}

/// Zero-separation effective scalar strength as printed in the source
/// catalogue: 8s/(s⁴ + 4). Kept verbatim for the record; compare with
/// [`scalar_effective_strength_from_limit`], which derives the value from
/// the limit matrix itself. The two disagree away from s = ±1 and neither is
/// asserted against the other.
pub fn scalar_effective_strength_printed(s: f64) -> f64 {
    8.0 * s / (s * s * s * s + 4.0)
}

/// Zero-separation effective scalar strength computed from the mirror-pair
/// limit matrix: the product matrix decomposes as a pure scalar point with
/// strength 8s/(4 + s²).
///
/// # Errors
///
/// As [`base_lambda`] plus decomposition errors.
pub fn scalar_effective_strength_from_limit(s: f64) -> Result<f64> {
    let base = base_lambda(CaseKind::Scalar, s)?;
    // Zero-separation product of the mirror pair: a_s = d_s = 1 + 2 b c,
    // b_s = 2 b d, c_s = 2 a c (phase-free since the pair phases cancel).
    let prod = LambdaParams::new(
        0.0,
        1.0 + 2.0 * base.b * base.c,
        2.0 * base.b * base.d,
        2.0 * base.a * base.c,
        1.0 + 2.0 * base.b * base.c,
    )?;
    let strengths = crate::lambda::lambda_to_strengths(&prod)?;
    Ok(strengths.scalar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_label_round_trip() {
        for case in SpecialCaseId::all() {
            let text = case.label();
            let parsed = SpecialCaseId::parse(&text).unwrap();
            assert_eq!(parsed, case);
        }
        assert!(SpecialCaseId::parse("sideways/scalar").is_err());
        assert!(SpecialCaseId::parse("even/vector").is_err());
        assert!(SpecialCaseId::parse("scalar").is_err());
    }

    #[test]
    fn base_matrices_are_unimodular_and_match_conversion() {
        // The explicit per-case formulas must agree with the general
        // strengths conversion wherever both are defined.
        let checks: Vec<(CaseKind, f64, PhysicalStrengths)> = vec![
            (CaseKind::EqualMixture, -1.0, PhysicalStrengths::new(-1.0, -1.0, 0.0, 0.0).unwrap()),
            (CaseKind::InvertedMixture, 0.7, PhysicalStrengths::new(0.7, -0.7, 0.0, 0.0).unwrap()),
            (CaseKind::Pseudoscalar, 1.0, PhysicalStrengths::new(0.0, 0.0, 0.0, 1.0).unwrap()),
            (CaseKind::Scalar, 1.5, PhysicalStrengths::new(1.5, 0.0, 0.0, 0.0).unwrap()),
            (CaseKind::Electrostatic, -2.5, PhysicalStrengths::new(0.0, -2.5, 0.0, 0.0).unwrap()),
            (CaseKind::Magnetostatic, 0.9, PhysicalStrengths::new(0.0, 0.0, 0.9, 0.0).unwrap()),
        ];
        for (kind, s, strengths) in checks {
            let direct = base_lambda(kind, s).unwrap();
            let via_conversion = strengths_to_lambda(&strengths).unwrap();
            for (got, want, name) in [
                (direct.phase, via_conversion.phase, "phase"),
                (direct.a, via_conversion.a, "a"),
                (direct.b, via_conversion.b, "b"),
                (direct.c, via_conversion.c, "c"),
                (direct.d, via_conversion.d, "d"),
            ] {
                assert!(
                    (got - want).abs() < 1e-12,
                    "{kind:?} {name}: explicit {got} vs conversion {want}"
                );
            }
        }
    }

    #[test]
    fn decoupling_strengths_rejected() {
        for kind in [CaseKind::Pseudoscalar, CaseKind::Scalar] {
            for s in [2.0, -2.0] {
                assert!(matches!(
                    base_lambda(kind, s),
                    Err(Error::ImpermeableInteraction(_))
                ));
            }
        }
        let case = SpecialCaseId::parse("even/scalar").unwrap();
        assert!(instantiate(&case, 2.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn magnetostatic_has_no_equations() {
        let case = SpecialCaseId::parse("even/magnetostatic").unwrap();
        assert!(matches!(
            bound_residual(&case, 1.0, 2.0, 1.0, 0.5),
            Err(Error::CaseHasNoBoundEquation(_))
        ));
        assert!(matches!(
            resonance_residual(&case, 1.0, 2.0, 1.0, Complex64::new(3.0, -0.5)),
            Err(Error::CaseHasNoResonances(_))
        ));
        assert!(matches!(
            locus_branches(&case, 2.0, 1.0),
            Err(Error::CaseHasNoResonances(_))
        ));
    }

    #[test]
    fn undefined_terms_rejected() {
        for label in ["even/scalar", "even/electrostatic", "odd/equal-mixture"] {
            let case = SpecialCaseId::parse(label).unwrap();
            assert!(matches!(
                bound_residual(&case, 0.0, 2.0, 1.0, 0.5),
                Err(Error::InvalidStrength(_))
            ));
        }
    }

    #[test]
    fn bound_residual_consistent_with_resonance_residual_in_gap() {
        // Evaluating the resonance residual at a real gap energy must vanish
        // exactly where the bound residual vanishes. Probe the even equal
        // mixture at its ground state.
        let case = SpecialCaseId::parse("even/equal-mixture").unwrap();
        let (m, l, s) = (2.0, 1.0, -1.0);
        // Locate the "plus"-branch root by bisection of the bound residual.
        let f = |e: f64| bound_residual(&case, s, m, l, e).unwrap()[0].1;
        let (mut lo, mut hi) = (-1.999, 1.999);
        assert!(f(lo) * f(hi) < 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        let res = resonance_residual(&case, s, m, l, Complex64::new(root, 0.0)).unwrap();
        let plus = res.iter().find(|(label, _)| *label == "plus").unwrap().1;
        assert!(plus.norm() < 1e-9, "analytic continuation drifts: {plus}");
    }

    #[test]
    fn counting_rules_spot_checks() {
        let ml1 = (2.0, 1.0);
        let even_eq = SpecialCaseId::parse("even/equal-mixture").unwrap();
        assert_eq!(bound_state_count(&even_eq, 0.3, ml1.0, ml1.1).unwrap(), 0);
        assert_eq!(bound_state_count(&even_eq, -0.1, ml1.0, ml1.1).unwrap(), 1);
        assert_eq!(bound_state_count(&even_eq, -1.0, ml1.0, ml1.1).unwrap(), 2);

        let even_sc = SpecialCaseId::parse("even/scalar").unwrap();
        assert_eq!(bound_state_count(&even_sc, -0.3, 2.0, 1.0).unwrap(), 2);
        assert_eq!(bound_state_count(&even_sc, -1.0, 2.0, 1.0).unwrap(), 4);
        assert_eq!(bound_state_count(&even_sc, -7.8, 2.0, 1.0).unwrap(), 2);

        let even_el = SpecialCaseId::parse("even/electrostatic").unwrap();
        assert_eq!(bound_state_count(&even_el, 0.2, 2.0, 1.0).unwrap(), 1);
        assert_eq!(bound_state_count(&even_el, 1.0, 2.0, 1.0).unwrap(), 2);
        assert_eq!(bound_state_count(&even_el, 9.0, 2.0, 1.0).unwrap(), 1);

        let odd_eq = SpecialCaseId::parse("odd/equal-mixture").unwrap();
        assert_eq!(bound_state_count(&odd_eq, 0.5, 2.0, 1.0).unwrap(), 1);
        assert_eq!(bound_state_count(&odd_eq, 0.0, 2.0, 1.0).unwrap(), 0);

        let odd_sc = SpecialCaseId::parse("odd/scalar").unwrap();
        assert_eq!(bound_state_count(&odd_sc, 1.0, 2.0, 1.0).unwrap(), 2);
    }

    #[test]
    fn effective_scalar_strengths_recorded_not_reconciled() {
        // The printed form and the matrix-limit form agree at s = 1 and
        // differ at s = 2 (recorded as a catalogue discrepancy).
        let printed = scalar_effective_strength_printed(1.0);
        let derived = scalar_effective_strength_from_limit(1.0).unwrap();
        assert!((printed - derived).abs() < 1e-14);
        let printed = scalar_effective_strength_printed(1.5);
        let derived = scalar_effective_strength_from_limit(1.5).unwrap();
        assert!((printed - derived).abs() > 1e-3);
    }

    #[test]
    fn expectations_lists_are_sorted() {
        for case in SpecialCaseId::all() {
            let exp = expectations(&case, 2.0, 1.0).unwrap();
            for rule in [&exp.critical, &exp.supercritical] {
                if let StrengthRule::Only(values) = rule {
                    let mut sorted = values.clone();
                    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    assert_eq!(&sorted, values, "{case}");
                }
            }
        }
    }
}
