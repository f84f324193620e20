//! Resonance poles, locus curves, and decoupled-box spectra.
//!
//! Resonances are the complex zeros of the lower-right transfer entry in
//! the lower half of the energy plane. They are hunted with a damped,
//! deflated Newton iteration launched from a rectangular grid of seeds.
//! Seeds are processed one grid row at a time: within a row every seed
//! iterates independently (and in parallel) against the frozen set of
//! previously accepted poles; the row's findings are then merged in a
//! deterministic order, so the result never depends on thread scheduling.
//!
//! The locus tracer draws the strength-independent curves Im lhs(E) = 0 of
//! a special case's spectral equation. Poles of every strength of the case
//! slide along these curves, so the traced curves organize entire families
//! of resonances at once. Tracing uses marching squares with a per-edge
//! bisection refinement, which doubles as a filter against the spurious
//! crossings a pole of lhs itself would otherwise produce.
//!
//! The box spectra enumerate the exact levels of a particle confined
//! between two decoupled (impermeable) walls, by bisecting the real
//! quantization conditions of each wall type.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::cases::{locus_branches, SpecialCaseId};
use crate::exec::map_indexed;
use crate::lambda::Arrangement;
use crate::tol;
use crate::transfer::{branch_momentum, total_phase, transfer_matrix, ComplexEnergy};
use crate::{ensure_finite, Error, Result};

/// Axis-aligned rectangle in the complex energy plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl SearchRegion {
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on non-finite or unordered bounds.
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        for (v, name) in [
            (re_min, "re_min"),
            (re_max, "re_max"),
            (im_min, "im_min"),
            (im_max, "im_max"),
        ] {
            ensure_finite(v, name)?;
        }
        if re_min >= re_max || im_min >= im_max {
            return Err(Error::InvalidInput(format!(
                "region must satisfy re_min < re_max and im_min < im_max, got [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    fn contains_with_margin(&self, e: Complex64, frac: f64) -> bool {
        let mre = frac * (self.re_max - self.re_min);
        let mim = frac * (self.im_max - self.im_min);
        e.re >= self.re_min - mre
            && e.re <= self.re_max + mre
            && e.im >= self.im_min - mim
            && e.im <= self.im_max + mim
    }
}

/// Settings of a pole hunt.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSearch {
    pub region: SearchRegion,
    /// Seed grid as (columns, rows); rows run from shallow to deep.
    pub seeds: (usize, usize),
    pub max_iter: usize,
    /// Newton stops early once the residual drops below this.
    pub residual_target: f64,
    /// A finishing point is accepted as a zero when its residual is below
    /// this.
    pub residual_tol: f64,
    /// Zeros closer than this merge into one pole.
    pub dedup_tol: f64,
    /// Zeros with |Im E| below this count as real-axis roots (bound states
    /// or threshold zeros), not resonances.
    pub real_axis_tol: f64,
}

impl PoleSearch {
    /// Default hunt covering the window where the catalogued cases keep
    /// their low-lying poles: Re E in ±6m, Im E in [−2m, −10⁻⁴m].
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on a non-positive or non-finite mass.
    pub fn default_for_mass(mass: f64) -> Result<Self> {
        ensure_finite(mass, "mass")?;
        if mass <= 0.0 {
            return Err(Error::InvalidInput("mass must be positive".into()));
        }
        Ok(Self {
            region: SearchRegion::new(-6.0 * mass, 6.0 * mass, -2.0 * mass, -1e-4 * mass)?,
            seeds: tol::DEFAULT_SEED_GRID,
            max_iter: tol::NEWTON_MAX_ITER,
            residual_target: tol::POLE_RESIDUAL_TARGET,
            residual_tol: tol::POLE_RESIDUAL_TOL,
            dedup_tol: tol::POLE_DEDUP_FACTOR * mass,
            real_axis_tol: tol::POLE_REAL_AXIS_FACTOR * mass,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.seeds.0 == 0 || self.seeds.1 == 0 {
            return Err(Error::InvalidInput("seed grid must be non-empty".into()));
        }
        if self.region.im_max >= 0.0 {
            return Err(Error::InvalidInput(
                "pole searches live in the lower half plane (im_max < 0)".into(),
            ));
        }
        for (v, name) in [
            (self.residual_target, "residual_target"),
            (self.residual_tol, "residual_tol"),
            (self.dedup_tol, "dedup_tol"),
            (self.real_axis_tol, "real_axis_tol"),
        ] {
            ensure_finite(v, name)?;
            if v <= 0.0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// One accepted resonance pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePole {
    pub energy: Complex64,
    /// Width Γ = −2 Im E.
    pub width: f64,
    /// |M₂₂| at the accepted energy, divided by the matching-entry scale of
    /// the pair (the scaling keeps the condition reachable near decoupling
    /// strengths, where the entries grow without bound).
    pub residual: f64,
    pub iterations: usize,
    /// True when the continued momentum at the pole has negative real part
    /// (the pole sits on the unphysical side of the momentum map).
    pub re_k_negative: bool,
}

/// Outcome of a pole hunt.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceReport {
    /// Accepted poles, sorted by real part, then imaginary part.
    pub poles: Vec<ResonancePole>,
    pub attempted: usize,
    pub converged: usize,
    /// Converged zeros discarded for sitting on the real axis.
    pub excluded_real_axis: usize,
    /// Converged zeros discarded for leaving the search region.
    pub out_of_region: usize,
}

fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + (hi - lo) * t
}

fn entry_scale(p: &crate::lambda::LambdaParams) -> f64 {
    1.0 + p.a.abs().max(p.b.abs()).max(p.c.abs()).max(p.d.abs())
}

fn newton_zero(
    g: &(dyn Fn(Complex64) -> Option<Complex64> + Sync),
    seed: Complex64,
    frozen: &[Complex64],
    search: &PoleSearch,
    mass: f64,
) -> Option<(Complex64, f64, usize)> {
    let mut e = seed;
    let max_step = 0.5 * mass;
    for it in 0..search.max_iter {
        let gv = g(e)?;
        if gv.norm() < search.residual_target {
            return Some((e, gv.norm(), it));
        }
        let near_branch =
            (e - mass).norm() < tol::BRANCH_POINT_GUARD_FACTOR * mass
                || (e + mass).norm() < tol::BRANCH_POINT_GUARD_FACTOR * mass;
        let h = if near_branch {
            tol::NEWTON_STEP_FACTOR_NEAR_BRANCH * mass
        } else {
            tol::NEWTON_STEP_FACTOR * mass
        };
        let hc = Complex64::new(h, 0.0);
        let gp = (g(e + hc)? - g(e - hc)?) / (2.0 * h);
        if gp.norm() < 1e-300 {
            return None;
        }
        let ratio = gv / gp;
        let mut drag = Complex64::new(0.0, 0.0);
        for ej in frozen {
            let diff = e - ej;
            if diff.norm() < 1e-14 * mass {
                return None;
            }
            drag += 1.0 / diff;
        }
        let denom = Complex64::new(1.0, 0.0) - ratio * drag;
        let mut step = if denom.norm() > 1e-12 { -(ratio / denom) } else { -ratio };
        if step.norm() > max_step {
            step *= max_step / step.norm();
        }
        e += step;
        if !e.is_finite() || e.re.abs() > 20.0 * mass || e.im.abs() > 10.0 * mass {
            return None;
        }
        if step.norm() < 1e-15 * mass {
            let gv = g(e)?;
            if gv.norm() < search.residual_tol {
                return Some((e, gv.norm(), it + 1));
            }
            return None;
        }
    }
    let gv = g(e)?;
    if gv.norm() < search.residual_tol {
        Some((e, gv.norm(), search.max_iter))
    } else {
        None
    }
}

/// Hunts the complex zeros of the lower-right transfer entry of an
/// arrangement inside the search region.
///
/// Determinism: seeds of one grid row run in parallel against the frozen
/// pole set of earlier rows; the row's results then merge sequentially in
/// sorted order. Repeated runs give bitwise identical reports.
///
/// # Errors
///
/// [`Error::InvalidInput`] on bad search settings.
pub fn find_resonances(arrangement: &Arrangement, search: &PoleSearch) -> Result<ResonanceReport> {
    search.validate()?;
    let mass = arrangement.mass();
    let phase = (-Complex64::i() * total_phase(arrangement)).exp();
    // Near a decoupling strength the matching entries grow without bound and
    // push the smallest representable |M₂₂| above any fixed target, so the
    // hunted function is divided by the (energy-independent) entry scale of
    // the pair. The factor is constant, hence harmless to Newton.
    let scale = entry_scale(arrangement.point1()) * entry_scale(arrangement.point2());
    let g = move |e: Complex64| -> Option<Complex64> {
        let en = ComplexEnergy::new(e, mass).ok()?;
        let t = transfer_matrix(arrangement, &en).ok()?;
        let v = phase * t.entries.e22 / scale;
        v.is_finite().then_some(v)
    };

    let (cols, rows) = search.seeds;
    let mut poles: Vec<ResonancePole> = Vec::new();
    let mut attempted = 0usize;
    let mut converged = 0usize;
    let mut excluded_real_axis = 0usize;
    let mut out_of_region = 0usize;

    for row in 0..rows {
        let frozen: Vec<Complex64> = poles.iter().map(|p| p.energy).collect();
        let im = lerp(
            search.region.im_max,
            search.region.im_min,
            (row as f64 + 0.5) / rows as f64,
        );
        let region = search.region;
        let results = map_indexed(cols, |col| {
            let re = lerp(region.re_min, region.re_max, (col as f64 + 0.5) / cols as f64);
            newton_zero(&g, Complex64::new(re, im), &frozen, search, mass)
        });
        attempted += cols;

        let mut hits: Vec<(Complex64, f64, usize)> = results.into_iter().flatten().collect();
        hits.sort_by(|a, b| {
            (a.0.re, a.0.im, a.1)
                .partial_cmp(&(b.0.re, b.0.im, b.1))
                .expect("finite by construction")
        });
        for (e, residual, iterations) in hits {
            converged += 1;
            if e.im.abs() <= search.real_axis_tol {
                excluded_real_axis += 1;
                continue;
            }
            if e.im > 0.0 || !search.region.contains_with_margin(e, 0.05) {
                out_of_region += 1;
                continue;
            }
            let candidate = ResonancePole {
                energy: e,
                width: -2.0 * e.im,
                residual,
                iterations,
                re_k_negative: branch_momentum(e, mass).re < 0.0,
            };
            match poles.iter_mut().find(|p| (p.energy - e).norm() < search.dedup_tol) {
                Some(existing) => {
                    if candidate.residual < existing.residual {
                        *existing = candidate;
                    }
                }
                None => poles.push(candidate),
            }
        }
    }

    poles.sort_by(|a, b| {
        (a.energy.re, a.energy.im)
            .partial_cmp(&(b.energy.re, b.energy.im))
            .expect("finite by construction")
    });
    Ok(ResonanceReport { poles, attempted, converged, excluded_real_axis, out_of_region })
}

/// One traced curve of Im lhs(E) = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusCurve {
    /// Branch label of the case's left-hand side this curve belongs to.
    pub branch: &'static str,
    /// Polyline vertices (Re E, Im E), each refined until |Im lhs| is below
    /// the vertex tolerance.
    pub points: Vec<(f64, f64)>,
}

fn bit_key(p: (f64, f64)) -> (u64, u64) {
    (p.0.to_bits(), p.1.to_bits())
}

fn refine_edge_crossing(
    g: &(dyn Fn(f64, f64) -> f64 + Sync),
    a: (f64, f64),
    b: (f64, f64),
    fa: f64,
    fb: f64,
) -> Option<(f64, f64)> {
    debug_assert!(fa * fb < 0.0);
    let (mut ta, mut tb) = (0.0f64, 1.0f64);
    let (mut fa, mut fb) = (fa, fb);
    let at = |t: f64| (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t);
    for _ in 0..80 {
        let tm = 0.5 * (ta + tb);
        let p = at(tm);
        let fm = g(p.0, p.1);
        if !fm.is_finite() {
            return None;
        }
        if fm.abs() < tol::LOCUS_VERTEX_TOL {
            return Some(p);
        }
        if fa * fm <= 0.0 {
            tb = tm;
            fb = fm;
        } else {
            ta = tm;
            fa = fm;
        }
    }
    let _ = fb;
    let p = at(0.5 * (ta + tb));
    let fm = g(p.0, p.1);
    (fm.is_finite() && fm.abs() < tol::LOCUS_VERTEX_TOL).then_some(p)
}

/// Traces the curves Im lhs(E) = 0 of each branch of a case's spectral
/// equation over a rectangular window, on a grid of `grid` = (nx, ny)
/// cells.
///
/// Every returned vertex satisfies |Im lhs| below the vertex tolerance;
/// edge crossings that fail to refine (a pole of lhs crossing the edge)
/// are dropped rather than emitted.
///
/// # Errors
///
/// [`Error::CaseHasNoResonances`] for the magnetostatic kind,
/// [`Error::InvalidInput`] on bad geometry or a grid smaller than 2x2.
pub fn trace_imaginary_locus(
    case: &SpecialCaseId,
    mass: f64,
    separation: f64,
    region: &SearchRegion,
    grid: (usize, usize),
) -> Result<Vec<LocusCurve>> {
    let (nx, ny) = grid;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidInput("locus grid must be at least 2x2 cells".into()));
    }
    let branches = locus_branches(case, mass, separation)?;
    let xs: Vec<f64> = (0..=nx).map(|i| lerp(region.re_min, region.re_max, i as f64 / nx as f64)).collect();
    let ys: Vec<f64> = (0..=ny).map(|j| lerp(region.im_min, region.im_max, j as f64 / ny as f64)).collect();

    let mut curves = Vec::new();
    for br in &branches {
        let eval = |x: f64, y: f64| br.eval(Complex64::new(x, y)).im;
        let rows: Vec<Vec<f64>> = {
            let xs = &xs;
            let ys = &ys;
            map_indexed(ny + 1, |j| xs.iter().map(|&x| eval(x, ys[j])).collect())
        };

        // Crossing points per edge, computed once and shared by both
        // adjacent cells so chained segments meet bitwise exactly.
        let mut h_cross: HashMap<(usize, usize), (f64, f64)> = HashMap::new();
        let mut v_cross: HashMap<(usize, usize), (f64, f64)> = HashMap::new();
        for j in 0..=ny {
            for i in 0..nx {
                let (fa, fb) = (rows[j][i], rows[j][i + 1]);
                if fa.is_finite() && fb.is_finite() && fa * fb < 0.0 {
                    if let Some(p) =
                        refine_edge_crossing(&eval, (xs[i], ys[j]), (xs[i + 1], ys[j]), fa, fb)
                    {
                        h_cross.insert((i, j), p);
                    }
                }
            }
        }
        for j in 0..ny {
            for i in 0..=nx {
                let (fa, fb) = (rows[j][i], rows[j + 1][i]);
                if fa.is_finite() && fb.is_finite() && fa * fb < 0.0 {
                    if let Some(p) =
                        refine_edge_crossing(&eval, (xs[i], ys[j]), (xs[i], ys[j + 1]), fa, fb)
                    {
                        v_cross.insert((i, j), p);
                    }
                }
            }
        }

        let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                let corners = [rows[j][i], rows[j][i + 1], rows[j + 1][i], rows[j + 1][i + 1]];
                if corners.iter().any(|v| !v.is_finite()) {
                    continue;
                }
                let south = h_cross.get(&(i, j)).copied();
                let north = h_cross.get(&(i, j + 1)).copied();
                let west = v_cross.get(&(i, j)).copied();
                let east = v_cross.get(&(i + 1, j)).copied();
                let found: Vec<(f64, f64)> =
                    [south, north, west, east].iter().flatten().copied().collect();
                match found.len() {
                    2 => segments.push((found[0], found[1])),
                    4 => {
                        let (s, n, w, e) =
                            (south.unwrap(), north.unwrap(), west.unwrap(), east.unwrap());
                        let cx = 0.5 * (xs[i] + xs[i + 1]);
                        let cy = 0.5 * (ys[j] + ys[j + 1]);
                        let fc = eval(cx, cy);
                        if !fc.is_finite() {
                            continue;
                        }
                        if fc * corners[0] >= 0.0 {
                            segments.push((s, e));
                            segments.push((w, n));
                        } else {
                            segments.push((s, w));
                            segments.push((e, n));
                        }
                    }
                    _ => {}
                }
            }
        }

        // Chain segments into polylines; endpoints are shared bitwise.
        let mut adjacency: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
        for (idx, seg) in segments.iter().enumerate() {
            adjacency.entry(bit_key(seg.0)).or_default().push(idx);
            adjacency.entry(bit_key(seg.1)).or_default().push(idx);
        }
        let mut used = vec![false; segments.len()];
        for start in 0..segments.len() {
            if used[start] {
                continue;
            }
            used[start] = true;
            let mut points = vec![segments[start].0, segments[start].1];
            loop {
                let tail = *points.last().expect("non-empty");
                let next = adjacency
                    .get(&bit_key(tail))
                    .into_iter()
                    .flatten()
                    .copied()
                    .find(|&idx| !used[idx]);
                match next {
                    Some(idx) => {
                        used[idx] = true;
                        let seg = segments[idx];
                        points.push(if bit_key(seg.0) == bit_key(tail) { seg.1 } else { seg.0 });
                    }
                    None => break,
                }
            }
            loop {
                let head = points[0];
                let prev = adjacency
                    .get(&bit_key(head))
                    .into_iter()
                    .flatten()
                    .copied()
                    .find(|&idx| !used[idx]);
                match prev {
                    Some(idx) => {
                        used[idx] = true;
                        let seg = segments[idx];
                        points.insert(0, if bit_key(seg.0) == bit_key(head) { seg.1 } else { seg.0 });
                    }
                    None => break,
                }
            }
            curves.push(LocusCurve { branch: br.label, points });
        }
    }
    Ok(curves)
}

/// Wall type of a decoupled two-wall box.
///
/// The pseudoscalar walls pin one spinor component at each wall; the
/// scalar walls pin the combinations u ± iv; the hard-wall limit of the
/// equal mixture pins u. The minus/plus suffix names the decoupling
/// strength (−2 or +2) of the wall's parent case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxBoundary {
    PseudoscalarMinus,
    PseudoscalarPlus,
    ScalarMinus,
    ScalarPlus,
    EqualMixtureHardWall,
}

impl BoxBoundary {
    pub fn label(&self) -> &'static str {
        match self {
            BoxBoundary::PseudoscalarMinus => "pseudoscalar-minus",
            BoxBoundary::PseudoscalarPlus => "pseudoscalar-plus",
            BoxBoundary::ScalarMinus => "scalar-minus",
            BoxBoundary::ScalarPlus => "scalar-plus",
            BoxBoundary::EqualMixtureHardWall => "equal-mixture-hard-wall",
        }
    }

    /// # Errors
    ///
    /// [`Error::InvalidInput`] on an unknown label.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "pseudoscalar-minus" => BoxBoundary::PseudoscalarMinus,
            "pseudoscalar-plus" => BoxBoundary::PseudoscalarPlus,
            "scalar-minus" => BoxBoundary::ScalarMinus,
            "scalar-plus" => BoxBoundary::ScalarPlus,
            "equal-mixture-hard-wall" => BoxBoundary::EqualMixtureHardWall,
            other => {
                return Err(Error::InvalidInput(format!("unknown box boundary {other:?}")))
            }
        })
    }

    pub fn all() -> [BoxBoundary; 5] {
        [
            BoxBoundary::PseudoscalarMinus,
            BoxBoundary::PseudoscalarPlus,
            BoxBoundary::ScalarMinus,
            BoxBoundary::ScalarPlus,
            BoxBoundary::EqualMixtureHardWall,
        ]
    }
}

fn bisect_real_root(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, x_tol: f64) -> Option<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if !flo.is_finite() || !fhi.is_finite() || flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..200 {
        if hi - lo <= x_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if !fm.is_finite() {
            return None;
        }
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Some(0.5 * (lo + hi))
}

fn scan_real_roots(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize, x_tol: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=n {
        let x = lerp(lo, hi, i as f64 / n as f64);
        let fx = f(x);
        if prev_f.is_finite() && fx.is_finite() {
            if prev_f == 0.0 {
                roots.push(prev_x);
            } else if prev_f * fx < 0.0 {
                if let Some(r) = bisect_real_root(f, prev_x, x, x_tol) {
                    roots.push(r);
                }
            }
        }
        prev_x = x;
        prev_f = fx;
    }
    if prev_f == 0.0 {
        roots.push(prev_x);
    }
    roots
}

/// Exact levels of a particle confined between two decoupled walls a
/// distance `width` apart, listed ascending within |E| ≤ `max_abs_energy`.
///
/// Scattering-side levels come from bisecting each wall type's real
/// quantization condition in the interior momentum; the scalar-minus box
/// additionally carries a pair of gap levels and a zero-energy mode bound
/// to the outside faces of the walls. The threshold energies ±m themselves
/// are never listed (they belong to the threshold detectors, not to the
/// box).
///
/// # Errors
///
/// [`Error::InvalidInput`] on non-positive mass, width, or window.
pub fn impermeable_box_spectrum(
    boundary: BoxBoundary,
    mass: f64,
    width: f64,
    max_abs_energy: f64,
) -> Result<Vec<f64>> {
    ensure_finite(mass, "mass")?;
    ensure_finite(width, "width")?;
    ensure_finite(max_abs_energy, "max_abs_energy")?;
    if mass <= 0.0 || width <= 0.0 || max_abs_energy <= 0.0 {
        return Err(Error::InvalidInput(
            "mass, width, and energy window must be positive".into(),
        ));
    }
    let m = mass;
    let l = width;
    let mut levels: Vec<f64> = Vec::new();

    if max_abs_energy > m {
        let k_max = (max_abs_energy * max_abs_energy - m * m).sqrt();
        let k_eps = 1e-6 * std::f64::consts::PI / l;
        let periods = (k_max * l / std::f64::consts::PI).ceil() as usize;
        let n = (periods.max(1)) * 64 + 64;
        let x_tol = tol::BOX_ROOT_TOL_FACTOR * (1.0 + k_max);
        match boundary {
            BoxBoundary::PseudoscalarMinus
            | BoxBoundary::PseudoscalarPlus
            | BoxBoundary::EqualMixtureHardWall => {
                let f = |k: f64| (k * l).sin();
                for k in scan_real_roots(&f, k_eps, k_max, n, x_tol) {
                    let e = (m * m + k * k).sqrt();
                    levels.push(e);
                    levels.push(-e);
                }
            }
            BoxBoundary::ScalarMinus | BoxBoundary::ScalarPlus => {
                let sign_b = if boundary == BoxBoundary::ScalarMinus { 1.0 } else { -1.0 };
                for sigma in [1.0f64, -1.0] {
                    let f = |k: f64| {
                        let e = sigma * (m * m + k * k).sqrt();
                        let t = k / (e + m);
                        sign_b * 2.0 * t * (k * l).cos() - (1.0 - t * t) * (k * l).sin()
                    };
                    for k in scan_real_roots(&f, k_eps, k_max, n, x_tol) {
                        levels.push(sigma * (m * m + k * k).sqrt());
                    }
                }
            }
        }
    }

    if boundary == BoxBoundary::ScalarMinus {
        let margin = 1e-6 * m;
        let f = |e: f64| {
            let kappa = (m * m - e * e).sqrt();
            let tau = kappa / (m + e);
            let one_minus = 1.0 - tau;
            let one_plus = 1.0 + tau;
            (kappa * l).exp() * one_minus * one_minus - (-kappa * l).exp() * one_plus * one_plus
        };
        let x_tol = tol::BOX_ROOT_TOL_FACTOR * m;
        for e in scan_real_roots(&f, -m + margin, m - margin, 8192, x_tol) {
            if e.abs() <= max_abs_energy {
                levels.push(e);
            }
        }
        // Zero mode bound to the outside faces of the walls (doubly
        // degenerate across the two half-lines; listed once).
        levels.push(0.0);
    }

    levels.retain(|e| e.abs() <= max_abs_energy);
    levels.sort_by(|a, b| a.partial_cmp(b).expect("finite by construction"));
    levels.dedup_by(|a, b| (*a - *b).abs() < tol::BOX_ROOT_TOL_FACTOR * (1.0 + m));
    Ok(levels)
}
