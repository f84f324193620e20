//! The run-configuration document and its translation into core types.
//!
//! A run is described by one JSON document; command-line flags override the
//! corresponding fields. Exactly one interaction form must be present:
//! physical strengths per point, matching-matrix parameters per point, or a
//! catalogue case id with a strength. The figure task runs at its fixed
//! geometry and needs none of the physical fields.

use std::path::Path;

use pointscatter_core::cases::{instantiate, SpecialCaseId};
use pointscatter_core::lambda::{
    strengths_to_lambda, Arrangement, LambdaParams, Parity, PhysicalStrengths,
};
use pointscatter_core::{Error, Result};
use serde::Deserialize;

/// Physical strengths of one point.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrengthsSpec {
    #[serde(default)]
    pub scalar: f64,
    #[serde(default)]
    pub electrostatic: f64,
    #[serde(default)]
    pub magnetostatic: f64,
    #[serde(default)]
    pub pseudoscalar: f64,
}

impl StrengthsSpec {
    /// # Errors
    ///
    /// NaN amplitudes, per [`PhysicalStrengths::new`].
    pub fn build(&self) -> Result<PhysicalStrengths> {
        PhysicalStrengths::new(self.scalar, self.electrostatic, self.magnetostatic, self.pseudoscalar)
    }
}

/// Matching-matrix parameters of one point.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaSpec {
    #[serde(default)]
    pub phase: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LambdaSpec {
    /// # Errors
    ///
    /// Non-unimodular or non-finite entries, per [`LambdaParams::new`].
    pub fn build(&self) -> Result<LambdaParams> {
        LambdaParams::new(self.phase, self.a, self.b, self.c, self.d)
    }
}

/// A value per interaction point.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointPair<T> {
    pub point1: T,
    pub point2: T,
}

/// Catalogue case reference.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    /// `"even/scalar"`, `"odd/equal-mixture"`, ...
    pub id: String,
    pub strength: f64,
}

/// The interaction description; exactly one form must be present.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionSpec {
    pub strengths: Option<PointPair<StrengthsSpec>>,
    pub lambda: Option<PointPair<LambdaSpec>>,
    pub case: Option<CaseSpec>,
    /// Symmetry claim for the strengths/lambda forms: `"even"`, `"odd"`, or
    /// `"general"` (default). The claim is verified entrywise.
    #[serde(default)]
    pub parity: Option<String>,
}

/// Scan controls shared by the grid-shaped tasks.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    /// Bound-state scan points, scatter grid points, or resonance seed
    /// columns, depending on the task.
    pub grid: Option<usize>,
    /// Residual or detection tolerance, depending on the task.
    pub tol: Option<f64>,
    /// Scatter window or resonance-region real bounds.
    pub energy_min: Option<f64>,
    pub energy_max: Option<f64>,
    /// Resonance-region imaginary bounds (both negative).
    pub im_min: Option<f64>,
    pub im_max: Option<f64>,
}

/// Output destination and encoding.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<String>,
    /// `"csv"` (default) or `"json"`.
    pub format: Option<String>,
}

/// One run configuration document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Required by every task except figure.
    #[serde(default)]
    pub mass: Option<f64>,
    /// Required by every task except figure; zero is meaningful only for
    /// convert and limit.
    #[serde(default)]
    pub separation: Option<f64>,
    /// Required by every task except figure.
    #[serde(default)]
    pub interaction: Option<InteractionSpec>,
    /// Informational task name; the command-line subcommand wins.
    #[serde(default)]
    pub task: Option<String>,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub output: OutputConfig,
    /// Figure id for the figure task.
    #[serde(default)]
    pub figure: Option<u32>,
}

fn parse_parity(text: &str) -> Result<Parity> {
    match text {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        "general" => Ok(Parity::General),
        other => Err(Error::InvalidInput(format!(
            "unknown parity {other:?}, expected \"even\", \"odd\", or \"general\""
        ))),
    }
}

impl RunConfig {
    /// Reads and validates a configuration file.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on IO failures, malformed JSON, or any
    /// violated field constraint.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("malformed config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// # Errors
    ///
    /// [`Error::InvalidInput`] on any violated field constraint.
    pub fn validate(&self) -> Result<()> {
        if let Some(m) = self.mass {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidInput(format!("mass must be positive, got {m}")));
            }
        }
        if let Some(l) = self.separation {
            if !(l.is_finite() && l >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "separation must be non-negative, got {l}"
                )));
            }
        }
        if let Some(interaction) = &self.interaction {
            let forms = [
                interaction.strengths.is_some(),
                interaction.lambda.is_some(),
                interaction.case.is_some(),
            ];
            if forms.iter().filter(|&&p| p).count() != 1 {
                return Err(Error::InvalidInput(
                    "interaction must specify exactly one of strengths, lambda, case".into(),
                ));
            }
            if interaction.case.is_some() && interaction.parity.is_some() {
                return Err(Error::InvalidInput(
                    "the case form carries its own parity; drop the parity field".into(),
                ));
            }
            if let Some(p) = &interaction.parity {
                parse_parity(p)?;
            }
        }
        if let Some(task) = &self.task {
            const TASKS: [&str; 8] = [
                "convert",
                "bound-states",
                "critical",
                "resonances",
                "scatter",
                "figure",
                "limit",
                "nonrel-check",
            ];
            if !TASKS.contains(&task.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "unknown task {task:?}, expected one of {TASKS:?}"
                )));
            }
        }
        if let Some(t) = self.scan.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidInput(format!("scan.tol must be positive, got {t}")));
            }
        }
        if let Some(f) = &self.output.format {
            crate::output::Format::parse(f)?;
        }
        Ok(())
    }

    /// # Errors
    ///
    /// [`Error::InvalidInput`] when the config has no mass.
    pub fn mass(&self) -> Result<f64> {
        self.mass
            .ok_or_else(|| Error::InvalidInput("this task needs a mass in the config".into()))
    }

    /// # Errors
    ///
    /// [`Error::InvalidInput`] when the config has no separation.
    pub fn separation(&self) -> Result<f64> {
        self.separation
            .ok_or_else(|| Error::InvalidInput("this task needs a separation in the config".into()))
    }

    /// # Errors
    ///
    /// [`Error::InvalidInput`] when the config has no interaction.
    pub fn interaction(&self) -> Result<&InteractionSpec> {
        self.interaction
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("this task needs an interaction in the config".into()))
    }

    /// The parsed case form, when that is the given interaction.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on a missing interaction or an unknown case
    /// id.
    pub fn case_form(&self) -> Result<Option<(SpecialCaseId, f64)>> {
        match &self.interaction()?.case {
            None => Ok(None),
            Some(spec) => Ok(Some((SpecialCaseId::parse(&spec.id)?, spec.strength))),
        }
    }

    /// Builds the configured arrangement at the configured separation.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] when the separation is zero (only convert and
    /// limit accept that), plus construction errors of the chosen form.
    pub fn arrangement(&self) -> Result<Arrangement> {
        let separation = self.separation()?;
        if separation == 0.0 {
            return Err(Error::InvalidInput(
                "this task needs a positive separation (zero is only meaningful for convert and limit)"
                    .into(),
            ));
        }
        self.arrangement_at(separation)
    }

    /// Builds the configured arrangement at an explicit separation.
    ///
    /// # Errors
    ///
    /// Construction errors of the chosen interaction form.
    pub fn arrangement_at(&self, separation: f64) -> Result<Arrangement> {
        let mass = self.mass()?;
        if let Some((case, strength)) = self.case_form()? {
            return instantiate(&case, strength, mass, separation);
        }
        let interaction = self.interaction()?;
        let parity = match &interaction.parity {
            None => Parity::General,
            Some(p) => parse_parity(p)?,
        };
        let (p1, p2) = if let Some(pair) = &interaction.strengths {
            (strengths_to_lambda(&pair.point1.build()?)?, strengths_to_lambda(&pair.point2.build()?)?)
        } else if let Some(pair) = &interaction.lambda {
            (pair.point1.build()?, pair.point2.build()?)
        } else {
            unreachable!("validate() enforces exactly one form");
        };
        Arrangement::with_parity(mass, separation, p1, p2, parity)
    }
}
