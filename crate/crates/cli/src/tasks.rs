//! The task implementations behind each subcommand.

use pointscatter_core::cases::instantiate;
use pointscatter_core::lambda::{
    is_permeable, lambda_to_strengths, LambdaParams, PhysicalStrengths,
    strengths_to_lambda,
};
use pointscatter_core::nonrel::nonrel_consistency_check;
use pointscatter_core::resonance::{find_resonances, PoleSearch, SearchRegion};
use pointscatter_core::spectra::{check_critical, check_supercritical, find_bound_states, ScanSpec};
use pointscatter_core::transfer::{scattering_amplitudes, single_point_limit, ParityClass};
use pointscatter_core::{tol, Error, Result};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::figures;
use crate::output::{Cell, Outcome, Output, Table};

/// Loaded configuration plus the command-line overrides that shape a run.
pub struct Effective {
    pub config: Option<RunConfig>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    /// Positional figure id, when the figure task got one.
    pub figure_id: Option<u32>,
}

impl Effective {
    /// # Errors
    ///
    /// [`Error::InvalidInput`] when the task needs a config and none was
    /// given.
    pub fn config(&self) -> Result<&RunConfig> {
        self.config
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("this task requires --config".into()))
    }

    fn grid_or(&self, fallback: Option<usize>) -> Option<usize> {
        self.grid.or(fallback)
    }

    fn tol_or(&self, fallback: Option<f64>) -> Option<f64> {
        self.tol.or(fallback)
    }
}

fn json_f64(v: f64) -> Value {
    // JSON has no non-finite numbers; infinite strengths print as strings.
    // Negative zero prints as zero.
    let v = if v == 0.0 { 0.0 } else { v };
    serde_json::Number::from_f64(v).map_or_else(|| json!(v.to_string()), Value::Number)
}

fn strengths_json(s: &PhysicalStrengths) -> Value {
    json!({
        "scalar": json_f64(s.scalar),
        "electrostatic": json_f64(s.electrostatic),
        "magnetostatic": json_f64(s.magnetostatic),
        "pseudoscalar": json_f64(s.pseudoscalar),
    })
}

fn lambda_json(p: &LambdaParams) -> Value {
    json!({
        "phase": json_f64(p.phase),
        "a": json_f64(p.a),
        "b": json_f64(p.b),
        "c": json_f64(p.c),
        "d": json_f64(p.d),
    })
}

/// Conversion record of one point given by strengths: attach the matching
/// matrix, or a diagnostic when the point decouples.
fn strengths_record(s: &PhysicalStrengths) -> (Value, bool) {
    let permeable = is_permeable(s);
    let mut entry = Map::new();
    entry.insert("strengths".into(), strengths_json(s));
    entry.insert("permeable".into(), json!(permeable));
    let failed = if permeable {
        match strengths_to_lambda(s) {
            Ok(p) => {
                entry.insert("lambda".into(), lambda_json(&p));
                false
            }
            Err(e) => {
                entry.insert("diagnostic".into(), json!(e.to_string()));
                true
            }
        }
    } else {
        entry.insert(
            "diagnostic".into(),
            json!("the point decouples; an impermeable interaction has no matching matrix"),
        );
        true
    };
    (Value::Object(entry), failed)
}

/// Conversion record of one point given as a matching matrix: attach the
/// strength decomposition, or a diagnostic when it is degenerate.
fn lambda_record(p: &LambdaParams) -> (Value, bool) {
    let mut entry = Map::new();
    entry.insert("permeable".into(), json!(p.permeable));
    if !p.permeable {
        entry.insert(
            "diagnostic".into(),
            json!("the point decouples; an impermeable interaction has no matching matrix"),
        );
        return (Value::Object(entry), true);
    }
    entry.insert("lambda".into(), lambda_json(p));
    let failed = match lambda_to_strengths(p) {
        Ok(s) => {
            entry.insert("strengths".into(), strengths_json(&s));
            false
        }
        Err(e) => {
            entry.insert("diagnostic".into(), json!(e.to_string()));
            true
        }
    };
    (Value::Object(entry), failed)
}

/// Emits both representations of each point plus its permeability flag, as
/// JSON. Any point that cannot be converted makes the run exit with code 2,
/// with the diagnostic in the record.
pub fn convert(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let mass = cfg.mass()?;
    let separation = cfg.separation()?;
    let mut doc = Map::new();
    doc.insert("mass".into(), json_f64(mass));
    doc.insert("separation".into(), json_f64(separation));
    let mut failed = false;

    if let Some((case, strength)) = cfg.case_form()? {
        doc.insert("case".into(), json!(case.label()));
        doc.insert("strength".into(), json_f64(strength));
        // The matching matrices do not depend on the separation; a zero
        // separation still has well-defined per-point records.
        let sep = if separation > 0.0 { separation } else { 1.0 };
        match instantiate(&case, strength, mass, sep) {
            Ok(arr) => {
                for (name, p) in [("point1", arr.point1()), ("point2", arr.point2())] {
                    let (entry, f) = lambda_record(p);
                    failed |= f;
                    doc.insert(name.into(), entry);
                }
            }
            Err(Error::ImpermeableInteraction(msg)) => {
                doc.insert("permeable".into(), json!(false));
                doc.insert("diagnostic".into(), json!(msg));
                failed = true;
            }
            Err(e) => return Err(e),
        }
    } else {
        let interaction = cfg.interaction()?;
        if let Some(pair) = &interaction.strengths {
            for (name, spec) in [("point1", &pair.point1), ("point2", &pair.point2)] {
                let (entry, f) = strengths_record(&spec.build()?);
                failed |= f;
                doc.insert(name.into(), entry);
            }
        } else if let Some(pair) = &interaction.lambda {
            for (name, spec) in [("point1", &pair.point1), ("point2", &pair.point2)] {
                let (entry, f) = lambda_record(&spec.build()?);
                failed |= f;
                doc.insert(name.into(), entry);
            }
        }
    }

    Ok(Outcome { output: Output::Json(Value::Object(doc)), exit: if failed { 2 } else { 0 } })
}

/// Gap bound states plus the two threshold detections.
pub fn bound_states(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let arr = cfg.arrangement()?;
    let mut scan = ScanSpec::default();
    if let Some(g) = eff.grid_or(cfg.scan.grid) {
        scan.grid_points = g;
    }
    if let Some(t) = eff.tol_or(cfg.scan.tol) {
        scan.residual_tol = t;
    }
    let report = find_bound_states(&arr, &scan)?;

    let mut table = Table::new(&["kind", "energy", "residual", "detected"]);
    for b in &report.bound_states {
        table.push(vec![
            Cell::Text("bound".into()),
            Cell::Float(b.energy),
            Cell::Float(b.residual),
            Cell::Int(1),
        ]);
    }
    table.push(vec![
        Cell::Text("critical".into()),
        Cell::Float(arr.mass()),
        Cell::Float(report.critical.residual),
        Cell::Int(i64::from(report.critical.detected)),
    ]);
    table.push(vec![
        Cell::Text("supercritical".into()),
        Cell::Float(-arr.mass()),
        Cell::Float(report.supercritical.residual),
        Cell::Int(i64::from(report.supercritical.detected)),
    ]);
    Ok(Outcome::from_table(table))
}

/// Threshold detections alone, at a configurable detection tolerance.
pub fn critical(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let arr = cfg.arrangement()?;
    let detect_tol = eff.tol_or(cfg.scan.tol).unwrap_or(tol::THRESHOLD_DETECT_TOL);
    let crit = check_critical(&arr, detect_tol)?;
    let sup = check_supercritical(&arr, detect_tol)?;

    let mut table = Table::new(&["kind", "energy", "residual", "detected"]);
    table.push(vec![
        Cell::Text("critical".into()),
        Cell::Float(arr.mass()),
        Cell::Float(crit.residual),
        Cell::Int(i64::from(crit.detected)),
    ]);
    table.push(vec![
        Cell::Text("supercritical".into()),
        Cell::Float(-arr.mass()),
        Cell::Float(sup.residual),
        Cell::Int(i64::from(sup.detected)),
    ]);
    Ok(Outcome::from_table(table))
}

/// Resonance poles in the lower half plane.
pub fn resonances(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let arr = cfg.arrangement()?;
    let mut search = PoleSearch::default_for_mass(arr.mass())?;
    let r = &search.region;
    search.region = SearchRegion::new(
        cfg.scan.energy_min.unwrap_or(r.re_min),
        cfg.scan.energy_max.unwrap_or(r.re_max),
        cfg.scan.im_min.unwrap_or(r.im_min),
        cfg.scan.im_max.unwrap_or(r.im_max),
    )?;
    if let Some(g) = eff.grid_or(cfg.scan.grid) {
        search.seeds = (g.max(4), (g / 2).max(4));
    }
    if let Some(t) = eff.tol_or(cfg.scan.tol) {
        search.residual_tol = t;
    }
    let report = find_resonances(&arr, &search)?;

    let mut table = Table::new(&["re_energy", "im_energy", "width", "residual", "iterations"]);
    for p in &report.poles {
        table.push(vec![
            Cell::Float(p.energy.re),
            Cell::Float(p.energy.im),
            Cell::Float(p.width),
            Cell::Float(p.residual),
            Cell::Int(p.iterations as i64),
        ]);
    }
    Ok(Outcome::from_table(table))
}

/// Scattering sweep over a real energy grid outside the gap.
pub fn scatter(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let arr = cfg.arrangement()?;
    let m = arr.mass();
    let n = eff.grid_or(cfg.scan.grid).unwrap_or(512).max(2);
    let lo = cfg.scan.energy_min.unwrap_or(m * (1.0 + 1e-6));
    let hi = cfg.scan.energy_max.unwrap_or(6.0 * m);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInput(format!(
            "scatter window must satisfy energy_min < energy_max, got [{lo}, {hi}]"
        )));
    }

    let mut table = Table::new(&[
        "energy",
        "momentum",
        "re_r",
        "im_r",
        "re_t",
        "im_t",
        "reflection",
        "transmission",
        "unitarity_defect",
    ]);
    for i in 0..n {
        let e = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        if e.abs() <= m {
            continue;
        }
        let p = scattering_amplitudes(&arr, e)?;
        table.push(vec![
            Cell::Float(p.energy),
            Cell::Float(p.momentum),
            Cell::Float(p.reflection_amp.re),
            Cell::Float(p.reflection_amp.im),
            Cell::Float(p.transmission_amp.re),
            Cell::Float(p.transmission_amp.im),
            Cell::Float(p.reflection),
            Cell::Float(p.transmission),
            Cell::Float(p.unitarity_defect),
        ]);
    }
    if table.rows.is_empty() {
        return Err(Error::InvalidInput(format!(
            "the window [{lo}, {hi}] lies inside the gap |E| <= {m}; nothing to scatter"
        )));
    }
    Ok(Outcome::from_table(table))
}

/// Figure dataset regeneration.
pub fn figure(eff: &Effective) -> Result<Outcome> {
    let id = eff
        .figure_id
        .or_else(|| eff.config.as_ref().and_then(|c| c.figure))
        .ok_or_else(|| {
            Error::InvalidInput("figure needs an id: positional argument or config figure field".into())
        })?;
    Ok(Outcome::from_table(figures::figure_table(id)?))
}

/// Zero-separation limit: the product matrix and its symmetry class.
pub fn limit(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let separation = cfg.separation()?;
    // The limit is algebraic; a zero separation in the config selects the
    // same product, so any positive stand-in builds the arrangement.
    let sep = if separation > 0.0 { separation } else { 1.0 };
    let arr = cfg.arrangement_at(sep)?;
    let (product, class) = single_point_limit(&arr)?;
    let label = match class {
        ParityClass::Even => "even",
        ParityClass::Odd => "odd",
        ParityClass::GaugePhase => "gauge-phase",
        ParityClass::Undefined => "undefined",
    };

    let mut table = Table::new(&["class", "entry", "re", "im"]);
    for (name, v) in [
        ("e11", product.e11),
        ("e12", product.e12),
        ("e21", product.e21),
        ("e22", product.e22),
    ] {
        table.push(vec![
            Cell::Text(label.into()),
            Cell::Text(name.into()),
            Cell::Float(v.re),
            Cell::Float(v.im),
        ]);
    }
    Ok(Outcome::from_table(table))
}

/// Side-by-side comparison against the nonrelativistic model.
pub fn nonrel_check(eff: &Effective) -> Result<Outcome> {
    let cfg = eff.config()?;
    let (case, strength) = cfg.case_form()?.ok_or_else(|| {
        Error::InvalidInput("nonrel-check needs the case interaction form".into())
    })?;
    let separation = cfg.separation()?;
    if separation <= 0.0 {
        return Err(Error::InvalidInput("nonrel-check needs a positive separation".into()));
    }
    let cmp = nonrel_consistency_check(&case, strength, cfg.mass()?, separation)?;

    let mut table = Table::new(&[
        "index",
        "epsilon_relativistic",
        "epsilon_nonrelativistic",
        "relative_deviation",
    ]);
    let len = cmp.relativistic.len().max(cmp.nonrelativistic.len());
    for i in 0..len {
        let get = |v: &Vec<f64>| v.get(i).copied().unwrap_or(f64::NAN);
        table.push(vec![
            Cell::Int(i as i64),
            Cell::Float(get(&cmp.relativistic)),
            Cell::Float(get(&cmp.nonrelativistic)),
            Cell::Float(get(&cmp.relative_deviations)),
        ]);
    }
    Ok(Outcome::from_table(table))
}
