//! Named numerical tolerances and default resolutions.
//!
//! Every comparison threshold used by the crate lives here under a name that
//! states its role; no ad-hoc magic numbers appear at call sites. Factors
//! suffixed `_FACTOR` are relative and get multiplied by the mass scale (or
//! another stated scale) before use.

/// Unimodularity check |a d − b c − 1| on matching-matrix parameters.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Round-trip agreement strengths → matrix → strengths (absolute + relative).
pub const ROUND_TRIP_TOL: f64 = 1e-10;

/// Transfer-matrix determinant law |det M − e^{2i(φ₁+φ₂)}|.
pub const DET_PHASE_TOL: f64 = 1e-12;

/// Entrywise agreement of the connection matrix with its two factorizations.
pub const CONNECTION_TOL: f64 = 1e-11;

/// Scattering unitarity defect ||r|² + |t|² − 1|.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Momentum magnitude below which plane-wave bases are treated as singular,
/// relative to the mass.
pub const MOMENTUM_SINGULAR_FACTOR: f64 = 1e-9;

/// Denominator threshold |2 cos φ + a + d| for the strength decomposition,
/// relative to 1 + |a| + |d|.
pub const DEGENERATE_DENOMINATOR_FACTOR: f64 = 1e-12;

/// Classification threshold for the zero-separation parity pattern, relative
/// to 1 + |a| + |d| of the emerging single-point matrix.
pub const PARITY_CLASS_TOL: f64 = 1e-9;

/// Default number of energy grid points for bound-state scans.
pub const DEFAULT_SCAN_GRID: usize = 4096;

/// Offset of the scan window ends from ±m, relative to the mass.
pub const SCAN_MARGIN_FACTOR: f64 = 1e-6;

/// Bisection convergence width for bound-state energies, relative to the mass.
pub const BOUND_ENERGY_TOL_FACTOR: f64 = 1e-12;

/// Residual acceptance |M₂₂(E)| for a located bound state, relative to the
/// larger of 1 and the bracketing residual scale.
pub const BOUND_RESIDUAL_TOL: f64 = 1e-11;

/// Allowed imaginary contamination of the phase-stripped gap residual,
/// relative to its magnitude scale.
pub const BOUND_IMAG_GUARD: f64 = 1e-9;

/// Energy agreement between the direct scan and the parity-resolved
/// closed-form route, relative to the mass.
pub const PARITY_CROSS_TOL_FACTOR: f64 = 1e-9;

/// Threshold-state detection default: |M₁₂| at E = ±m below this flags a
/// critical (supercritical) interaction.
pub const THRESHOLD_DETECT_TOL: f64 = 1e-10;

/// Agreement between the numeric threshold residual and its closed parity
/// form (absolute, on top of a relative term of the same size).
pub const THRESHOLD_CROSS_TOL: f64 = 1e-9;

/// Default Newton residual |M₂₂| target at a resonance pole.
pub const POLE_RESIDUAL_TARGET: f64 = 1e-12;

/// Acceptance ceiling on |M₂₂| for a reported pole.
pub const POLE_RESIDUAL_TOL: f64 = 1e-10;

/// Pole dedup distance, relative to the mass.
pub const POLE_DEDUP_FACTOR: f64 = 1e-8;

/// Half-width of the real-axis strip (relative to the mass) inside which a
/// gap-energy Newton root is classified as a bound state, not a pole.
pub const POLE_REAL_AXIS_FACTOR: f64 = 1e-8;

/// Newton finite-difference step, relative to the mass.
pub const NEWTON_STEP_FACTOR: f64 = 1e-6;

/// Reduced finite-difference step near the branch points E = ±m.
pub const NEWTON_STEP_FACTOR_NEAR_BRANCH: f64 = 1e-8;

/// Distance from a branch point (relative to the mass) considered "near".
pub const BRANCH_POINT_GUARD_FACTOR: f64 = 1e-3;

/// Maximum damped-Newton iterations per seed.
pub const NEWTON_MAX_ITER: usize = 60;

/// |Im g| ceiling for an accepted locus-curve vertex.
pub const LOCUS_VERTEX_TOL: f64 = 1e-6;

/// Default seed grid for pole searches (columns × rows).
pub const DEFAULT_SEED_GRID: (usize, usize) = (64, 32);

/// Bisection convergence width for box-spectrum momenta, relative to 1/width.
pub const BOX_ROOT_TOL_FACTOR: f64 = 1e-12;

/// Environment variable read by [`crate::exec::configure_threads_from_env`]
/// to cap the worker-thread count of parallel scans.
pub const THREADS_ENV_VAR: &str = "POINTSCATTER_THREADS";
