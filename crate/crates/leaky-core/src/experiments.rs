//! Scripted benchmark anchors: the quantitative reference points the solver
//! is expected to reproduce, packaged as self-describing reports.
//!
//! Each anchor compares computed quantities against independent references —
//! closed forms, frozen high-precision oracles, analytic limits, or rigorous
//! property bounds — and records every comparison as a [`CheckLine`] with its
//! tolerance and the provenance of the reference. A report serializes to a
//! small structured-text document (`schema = 1`, TOML-compatible) whose byte
//! content is deterministic given the anchor id and the recorded seed;
//! wall-clock runtime lives only on the in-memory report.
//!
//! Anchors are identified by the ids in [`ANCHOR_IDS`] and run through
//! [`run_anchor`]. All randomized families (Fourier loops, jittered polygons,
//! line-defect configurations) draw from a counter-based generator seeded
//! with the value recorded in the report, so re-running an anchor reproduces
//! the exact inputs.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bs_core::{self, MeshPolicy};
use crate::comparison::{self, Bc, ComparisonProblem};
use crate::geometry::{
    chord_circle_value, chord_mean, make_fourier_loop, polygon_chord_bound, polygon_chord_sum,
    polyline_self_intersection, regular_polygon, ArcCurve, Dim, GeometryError, LeakyGraph,
    PointArray, RadialHarmonic, StarConfig,
};
use crate::greens;
use crate::krein_points;
use crate::line_defect::{self, LineDefectConfig};

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

/// Where a reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Exact closed-form expression evaluated in place.
    ClosedForm,
    /// Value computed once by an independent method and pinned in the code.
    FrozenOracle,
    /// Limit or asymptotic statement; the check verifies the approach.
    AnalyticLimit,
    /// Inequality or counting window that must hold exactly.
    PropertyBound,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed form",
            Provenance::FrozenOracle => "frozen oracle",
            Provenance::AnalyticLimit => "analytic limit",
            Provenance::PropertyBound => "property bound",
        }
    }
}

/// One comparison inside an anchor report.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: String,
    pub computed: f64,
    /// Reference value when the check is a numeric comparison.
    pub reference: Option<f64>,
    /// Absolute tolerance used for the comparison, if numeric.
    pub tolerance: Option<f64>,
    pub provenance: Provenance,
    pub pass: bool,
}

impl CheckLine {
    /// Numeric comparison: pass ⇔ |computed − reference| ≤ tolerance.
    pub fn against(
        name: &str,
        computed: f64,
        reference: f64,
        tolerance: f64,
        provenance: Provenance,
    ) -> Self {
        CheckLine {
            name: name.to_string(),
            computed,
            reference: Some(reference),
            tolerance: Some(tolerance),
            provenance,
            pass: computed.is_finite() && (computed - reference).abs() <= tolerance,
        }
    }

    /// Property check: pass decided by the caller, `computed` is the
    /// diagnostic scalar that was inspected (a count, a gap, an exponent).
    pub fn property(name: &str, computed: f64, pass: bool, provenance: Provenance) -> Self {
        CheckLine {
            name: name.to_string(),
            computed,
            reference: None,
            tolerance: None,
            provenance,
            pass: pass && computed.is_finite(),
        }
    }
}

/// Outcome of one anchor run.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub id: &'static str,
    /// Seed of the primary random family, when the anchor uses one.
    pub seed: Option<u64>,
    /// Input parameters as (bare key, rendered TOML value) pairs.
    pub inputs: Vec<(String, String)>,
    pub checks: Vec<CheckLine>,
    /// Wall-clock runtime; not part of the serialized document.
    pub runtime: Duration,
}

impl ExperimentReport {
    fn new(id: &'static str) -> Self {
        ExperimentReport {
            id,
            seed: None,
            inputs: Vec::new(),
            checks: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    fn input_f64(&mut self, key: &str, v: f64) {
        self.inputs.push((key.to_string(), fmt_f64(v)));
    }

    fn input_int(&mut self, key: &str, v: i64) {
        self.inputs.push((key.to_string(), v.to_string()));
    }

    fn input_list(&mut self, key: &str, vs: &[f64]) {
        let body: Vec<String> = vs.iter().map(|&v| fmt_f64(v)).collect();
        self.inputs
            .push((key.to_string(), format!("[{}]", body.join(", "))));
    }

    /// Serialize to the `schema = 1` anchor-report document.
    ///
    /// The byte content is a pure function of the anchor id and recorded
    /// seed: floats are rendered in shortest round-trip scientific form and
    /// the runtime is deliberately excluded.
    pub fn to_document(&self) -> String {
        let mut s = String::new();
        s.push_str("schema = 1\n");
        s.push_str("kind = \"anchor-report\"\n");
        s.push_str(&format!("id = {:?}\n", self.id));
        if let Some(seed) = self.seed {
            s.push_str(&format!("seed = {seed}\n"));
        }
        s.push_str(&format!("passed = {}\n", self.passed()));
        s.push_str("\n[input]\n");
        for (k, v) in &self.inputs {
            s.push_str(&format!("{k} = {v}\n"));
        }
        for c in &self.checks {
            s.push_str("\n[[check]]\n");
            s.push_str(&format!("name = {:?}\n", c.name));
            s.push_str(&format!("computed = {}\n", fmt_f64(c.computed)));
            if let Some(r) = c.reference {
                s.push_str(&format!("reference = {}\n", fmt_f64(r)));
            }
            if let Some(t) = c.tolerance {
                s.push_str(&format!("tolerance = {}\n", fmt_f64(t)));
            }
            s.push_str(&format!("provenance = {:?}\n", c.provenance.as_str()));
            s.push_str(&format!("pass = {}\n", c.pass));
        }
        s
    }
}

/// Render a float as a TOML-valid scientific literal that parses back to the
/// identical bits (`1e0`, `-4.9e-1`, `nan`, `inf`).
fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:e}")
    }
}

// ---------------------------------------------------------------------------
// Errors and dispatch
// ---------------------------------------------------------------------------

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("unknown anchor id {0:?}")]
    UnknownId(String),
    #[error(transparent)]
    Bs(#[from] bs_core::BsError),
    #[error(transparent)]
    Krein(#[from] krein_points::KreinError),
    #[error(transparent)]
    Comparison(#[from] comparison::ComparisonError),
    #[error(transparent)]
    LineDefect(#[from] line_defect::LineDefectError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Every anchor id known to [`run_anchor`], in canonical order.
pub const ANCHOR_IDS: [&str; 16] = [
    "point-zeta",
    "cross-ground",
    "segment-strong",
    "circle-strong",
    "counting-arc",
    "star-monotone",
    "isoper-loops",
    "isoper-polygons",
    "chord-bounds",
    "approx-points",
    "polymer-3d",
    "polymer-2d",
    "hiatus-slope",
    "line-defect",
    "flux-band",
    "curvature-gap",
];

/// Run a single anchor by id.
pub fn run_anchor(id: &str) -> Result<ExperimentReport, ExperimentError> {
    let t0 = Instant::now();
    let mut report = match id {
        "point-zeta" => anchor_point_zeta()?,
        "cross-ground" => anchor_cross_ground()?,
        "segment-strong" => anchor_segment_strong()?,
        "circle-strong" => anchor_circle_strong()?,
        "counting-arc" => anchor_counting_arc()?,
        "star-monotone" => anchor_star_monotone()?,
        "isoper-loops" => anchor_isoper_loops()?,
        "isoper-polygons" => anchor_isoper_polygons()?,
        "chord-bounds" => anchor_chord_bounds()?,
        "approx-points" => anchor_approx_points()?,
        "polymer-3d" => anchor_polymer_3d()?,
        "polymer-2d" => anchor_polymer_2d()?,
        "hiatus-slope" => anchor_hiatus_slope()?,
        "line-defect" => anchor_line_defect()?,
        "flux-band" => anchor_flux_band()?,
        "curvature-gap" => anchor_curvature_gap()?,
        other => return Err(ExperimentError::UnknownId(other.to_string())),
    };
    report.runtime = t0.elapsed();
    Ok(report)
}

/// Run every anchor in [`ANCHOR_IDS`] order.
pub fn run_all() -> Result<Vec<ExperimentReport>, ExperimentError> {
    ANCHOR_IDS.iter().map(|id| run_anchor(id)).collect()
}

// ---------------------------------------------------------------------------
// Shared references and random families
// ---------------------------------------------------------------------------

/// Exact ground-state κ for a circle of the given circumference: the unique
/// root of α·R·I₀(κR)·K₀(κR) = 1, located by bisection. The product I₀K₀ is
/// strictly decreasing, so the secular function has exactly one sign change.
pub fn circle_exact_kappa(alpha: f64, circumference: f64) -> f64 {
    assert!(
        alpha > 0.0 && circumference > 0.0,
        "circle secular equation needs alpha > 0 and a positive length"
    );
    let r = circumference / (2.0 * std::f64::consts::PI);
    let f = |k: f64| alpha * r * greens::i0(k * r) * greens::k0(k * r) - 1.0;
    // K₀ diverges logarithmically at 0, so f > 0 for small enough κ; the
    // large-κ asymptote I₀K₀ ~ 1/(2κR) drives f below zero.
    let mut lo = 1.0 / r;
    for _ in 0..2000 {
        if f(lo) > 0.0 {
            break;
        }
        lo *= 0.5;
    }
    let mut hi = lo;
    for _ in 0..2000 {
        hi *= 2.0;
        if f(hi) < 0.0 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Deterministic family of smooth closed loops of total length `length`:
/// radial harmonics k ∈ {2, 3} with coefficients uniform in ±0.12/k².
/// Draws that self-intersect, pinch the radius, or stay within 0.01 total
/// harmonic mass of the circle are rejected and redrawn.
pub fn sample_radial_loops(seed: u64, count: usize, length: f64) -> Vec<ArcCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let harmonics: Vec<RadialHarmonic> = [2u32, 3]
            .iter()
            .map(|&k| {
                let m = 0.12 / (k as f64 * k as f64);
                RadialHarmonic {
                    k,
                    a: rng.gen_range(-m..m),
                    b: rng.gen_range(-m..m),
                }
            })
            .collect();
        let mass: f64 = harmonics.iter().map(|h| h.a.abs() + h.b.abs()).sum();
        if mass < 0.01 {
            continue; // too close to the circle to separate from it
        }
        if let Ok(curve) = make_fourier_loop(&harmonics, length) {
            out.push(curve);
        }
    }
    out
}

/// Deterministic family of non-regular closed N-gons of perimeter `length`:
/// regular vertices jittered radially (±15%) and angularly (±25% of the
/// vertex spacing), rescaled to the exact perimeter. Self-intersecting or
/// nearly regular draws are rejected.
pub fn sample_polygons(seed: u64, count: usize, n: usize, length: f64) -> Vec<Vec<[f64; 2]>> {
    assert!(n >= 3, "polygon family needs n >= 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut max_radial: f64 = 0.0;
        let mut pts: Vec<[f64; 2]> = (0..n)
            .map(|j| {
                let dr = rng.gen_range(-0.15..0.15);
                let dth = rng.gen_range(-0.25..0.25) * two_pi / n as f64;
                max_radial = max_radial.max(dr.abs());
                let th = two_pi * j as f64 / n as f64 + dth;
                let r = 1.0 + dr;
                [r * th.cos(), r * th.sin()]
            })
            .collect();
        if max_radial < 0.02 {
            continue; // indistinguishable from regular at the test tolerances
        }
        let perim: f64 = (0..n)
            .map(|j| {
                let a = pts[j];
                let b = pts[(j + 1) % n];
                (a[0] - b[0]).hypot(a[1] - b[1])
            })
            .sum();
        let scale = length / perim;
        for p in pts.iter_mut() {
            p[0] *= scale;
            p[1] *= scale;
        }
        if polyline_self_intersection(&pts, true, 1e-9 * length).is_some() {
            continue;
        }
        out.push(pts);
    }
    out
}

/// Closed polyline through the given vertices (first vertex repeated).
fn closed_polyline(vertices: &[[f64; 2]]) -> Result<ArcCurve, GeometryError> {
    let mut pts = vertices.to_vec();
    pts.push(vertices[0]);
    ArcCurve::polyline(&pts)
}

/// Randomized line-plus-points configurations with sane separations: point
/// heights |x₂| ∈ [0.15, 1.5] keep the near-threshold quadrature resolvable,
/// pairwise distances stay above 0.1.
fn sample_line_defect_configs(seed: u64, count: usize) -> Vec<LineDefectConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=4usize);
        let alpha = rng.gen_range(1.0..6.0);
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(n);
        let mut betas = Vec::with_capacity(n);
        for _ in 0..n {
            let x1 = rng.gen_range(-1.0..1.0);
            let mag = rng.gen_range(0.15..1.5);
            let x2 = if rng.gen_bool(0.5) { mag } else { -mag };
            pts.push([x1, x2]);
            betas.push(rng.gen_range(-0.4..0.4));
        }
        let mut separated = true;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]);
                if d < 0.1 {
                    separated = false;
                }
            }
        }
        if !separated {
            continue;
        }
        out.push(
            LineDefectConfig::new(alpha, pts, betas)
                .expect("sampler only emits valid configurations"),
        );
    }
    out
}

/// Least-squares slope of y against x.
fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let m = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y.iter()).map(|(a, b)| a * b).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

// ---------------------------------------------------------------------------
// Anchors: exactly solvable references
// ---------------------------------------------------------------------------

/// Single 2D point interaction: E₁ = ζ_β = −4e^{2(−2πβ + ψ(1))} across
/// couplings spanning eleven orders of magnitude.
fn anchor_point_zeta() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("point-zeta");
    let betas = [-1.0, 0.0, 1.0];
    report.input_list("beta", &betas);
    report.input_f64("tol", 1e-10);
    for &beta in &betas {
        let array = PointArray::new2d(&[[0.0, 0.0]], &[beta])?;
        let res = krein_points::point_spectrum(&array, 1, 1e-10)?;
        let zeta = greens::zeta_threshold(beta);
        let e1 = res.states.first().map(|s| s.energy).unwrap_or(f64::NAN);
        report.checks.push(CheckLine::against(
            &format!("e1[beta={beta}]"),
            e1,
            zeta,
            1e-10 * zeta.abs(),
            Provenance::ClosedForm,
        ));
    }
    Ok(report)
}

/// Crossed perpendicular lines: the generator separates into two independent
/// 1D δ-interactions, so E₁ = −α²/2 exactly. Solved on a 4-ray star with
/// truncated leads.
fn anchor_cross_ground() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("cross-ground");
    let alpha = 1.0;
    let truncation = 20.0 / alpha;
    report.input_f64("alpha", alpha);
    report.input_int("rays", 4);
    report.input_f64("truncation", truncation);
    report.input_f64("density", MeshPolicy::default().density);
    let half_pi = 0.5 * std::f64::consts::PI;
    let star = StarConfig::new(&[half_pi, half_pi, half_pi], truncation)?;
    let graph = star.to_graph(alpha)?;
    let res = bs_core::find_bound_states(&graph, 1, 1e-8, &MeshPolicy::default())?;
    let e1 = res.states.first().map(|s| s.energy).unwrap_or(f64::NAN);
    let exact = -0.5 * alpha * alpha;
    report.checks.push(CheckLine::against(
        "e1",
        e1,
        exact,
        0.01 * exact.abs(),
        Provenance::ClosedForm,
    ));
    report.checks.push(CheckLine::property(
        "below-line-threshold",
        e1 - res.threshold,
        e1 < res.threshold,
        Provenance::AnalyticLimit,
    ));
    Ok(report)
}

/// Finite segment at the infinite-line secular point: μ₁(κ = α/2) → 1 as the
/// segment grows, with the deviation shrinking monotonically in L.
fn anchor_segment_strong() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("segment-strong");
    let alpha = 1.0;
    let lengths = [50.0, 100.0, 200.0];
    report.input_f64("alpha", alpha);
    report.input_list("length", &lengths);
    report.input_f64("density", 8.0);
    let mesh = MeshPolicy::with_density(8.0);
    let mut devs = Vec::new();
    for &l in &lengths {
        let seg = ArcCurve::segment([0.0, 0.0], [l, 0.0])?;
        let graph = LeakyGraph::new(vec![seg], alpha)?;
        let mu = bs_core::eigenvalue_curve(&graph, 0.5 * alpha, 1, &mesh)?;
        devs.push((mu - 1.0).abs());
        report.checks.push(CheckLine::against(
            &format!("mu1[length={l}]"),
            mu,
            1.0,
            2e-2,
            Provenance::AnalyticLimit,
        ));
    }
    report.checks.push(CheckLine::property(
        "deviation-decreasing",
        devs[devs.len() - 1],
        devs.windows(2).all(|w| w[1] < w[0]),
        Provenance::AnalyticLimit,
    ));
    Ok(report)
}

/// Circle at strong coupling: E₁ against the exact secular root, and the
/// distance of E₁ + α²/4 from the curvature eigenvalue −π² (unit length).
///
/// The envelope constant C = max α|err|/ln α is reported; the per-step
/// decrease check records the raw |err| sequence behavior, which for this α
/// grid is *not* monotone — the signed error crosses zero near α ≈ 18 and
/// dips again around α ≈ 30, so |err| rises from α = 20 to α = 40 before
/// falling. The check is kept and reports honestly.
fn anchor_circle_strong() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("circle-strong");
    let alphas = [20.0, 40.0, 80.0];
    let length = 1.0;
    report.input_list("alpha", &alphas);
    report.input_f64("length", length);
    report.input_f64("density", 8.0);
    let mesh = MeshPolicy::with_density(8.0);
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let mut errs = Vec::new();
    for &alpha in &alphas {
        let circle = ArcCurve::circle_of_length(length)?;
        let graph = LeakyGraph::loop_graph(circle, alpha)?;
        let res = bs_core::find_bound_states(&graph, 1, 1e-8, &mesh)?;
        let e1 = res.states.first().map(|s| s.energy).unwrap_or(f64::NAN);
        let kappa_exact = circle_exact_kappa(alpha, length);
        let e_exact = -kappa_exact * kappa_exact;
        report.checks.push(CheckLine::against(
            &format!("e1[alpha={alpha}]"),
            e1,
            e_exact,
            1e-5 * e_exact.abs(),
            Provenance::ClosedForm,
        ));
        errs.push((e_exact + 0.25 * alpha * alpha + pi2).abs());
    }
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    report.checks.push(CheckLine::property(
        "curvature-gap-decreasing",
        errs[errs.len() - 1],
        decreasing,
        Provenance::AnalyticLimit,
    ));
    let c_env = errs
        .iter()
        .zip(alphas.iter())
        .map(|(e, a)| e * a / a.ln())
        .fold(0.0f64, f64::max);
    report.checks.push(CheckLine::property(
        "curvature-gap-envelope-constant",
        c_env,
        c_env.is_finite() && c_env > 0.0,
        Provenance::AnalyticLimit,
    ));
    Ok(report)
}

/// Strong-coupling Weyl count on a half-circle arc: the number of bound
/// states matches αL/2π within max(3, 2·ln α).
fn anchor_counting_arc() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("counting-arc");
    let alphas = [20.0, 40.0];
    let arc_len = 1.0;
    let radius = 1.0 / std::f64::consts::PI;
    report.input_list("alpha", &alphas);
    report.input_f64("arc-length", arc_len);
    report.input_f64("radius", radius);
    report.input_f64("density", 8.0);
    let mesh = MeshPolicy::with_density(8.0);
    for &alpha in &alphas {
        let arc = ArcCurve::circular_arc([0.0, 0.0], radius, arc_len)?;
        let graph = LeakyGraph::new(vec![arc], alpha)?;
        let disc = bs_core::assemble(&graph, 1e-3, &mesh)?;
        let count = disc.count_above_one() as f64;
        let predicted = alpha * arc_len / (2.0 * std::f64::consts::PI);
        let window = (2.0 * alpha.ln()).max(3.0);
        report.checks.push(CheckLine::against(
            &format!("count[alpha={alpha}]"),
            count,
            predicted,
            window,
            Provenance::PropertyBound,
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Anchors: geometric optimality and monotonicity
// ---------------------------------------------------------------------------

/// Bent line: E₁ strictly increasing in the bending angle β on (0, π).
/// Truncations grow with β because the binding weakens toward the straight
/// line and the state spreads along the leads.
fn anchor_star_monotone() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("star-monotone");
    let alpha = 2.0;
    let pi = std::f64::consts::PI;
    let betas = [pi / 6.0, pi / 3.0, pi / 2.0, 2.0 * pi / 3.0, 5.0 * pi / 6.0];
    let truncations = [24.0, 24.0, 24.0, 48.0, 96.0].map(|t| t / alpha);
    report.input_f64("alpha", alpha);
    report.input_list("beta", &betas);
    report.input_list("truncation", &truncations);
    let mesh = MeshPolicy::default().with_growth();
    let mut energies = Vec::new();
    for (&beta, &t) in betas.iter().zip(truncations.iter()) {
        let star = StarConfig::new(&[beta], t)?;
        let graph = star.to_graph(alpha)?;
        let res = bs_core::find_bound_states(&graph, 1, 1e-8, &mesh)?;
        let e1 = res.states.first().map(|s| s.energy).unwrap_or(f64::NAN);
        energies.push(e1);
        report.checks.push(CheckLine::property(
            &format!("below-threshold[beta={beta:.4}]"),
            e1 + 0.25 * alpha * alpha,
            e1 < -0.25 * alpha * alpha,
            Provenance::PropertyBound,
        ));
    }
    let min_gap = energies
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    report.checks.push(CheckLine::property(
        "e1-strictly-increasing",
        min_gap,
        min_gap > 0.0,
        Provenance::PropertyBound,
    ));
    Ok(report)
}

/// Isoperimetric optimality among smooth loops: the circle maximizes E₁ over
/// a seeded family of twenty non-circular Fourier loops of the same length.
fn anchor_isoper_loops() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("isoper-loops");
    let seed = 7u64;
    let alpha = 5.0;
    let length = 1.0;
    let count = 20usize;
    report.seed = Some(seed);
    report.input_f64("alpha", alpha);
    report.input_f64("length", length);
    report.input_int("loops", count as i64);
    report.input_f64("density", MeshPolicy::default().density);
    let mesh = MeshPolicy::default();
    let circle = ArcCurve::circle_of_length(length)?;
    let graph = LeakyGraph::loop_graph(circle, alpha)?;
    let e_circle = bs_core::find_bound_states(&graph, 1, 1e-8, &mesh)?.states[0].energy;
    let kappa_exact = circle_exact_kappa(alpha, length);
    report.checks.push(CheckLine::against(
        "e1-circle",
        e_circle,
        -kappa_exact * kappa_exact,
        1e-6 * kappa_exact * kappa_exact,
        Provenance::ClosedForm,
    ));
    let mut min_gap = f64::INFINITY;
    for curve in sample_radial_loops(seed, count, length) {
        let graph = LeakyGraph::loop_graph(curve, alpha)?;
        let e_loop = bs_core::find_bound_states(&graph, 1, 1e-8, &mesh)?.states[0].energy;
        min_gap = min_gap.min(e_circle - e_loop);
    }
    report.checks.push(CheckLine::property(
        "circle-maximizes-e1",
        min_gap,
        min_gap > 0.0,
        Provenance::PropertyBound,
    ));
    Ok(report)
}

/// Discrete isoperimetric optimality: among N point interactions equally
/// spaced in arclength along closed loops of fixed perimeter, the regular
/// polygon maximizes E₁. Tested for N ∈ {4, 8} against twenty jittered
/// polygons each.
fn anchor_isoper_polygons() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("isoper-polygons");
    let seed = 11u64;
    let coupling = 0.5;
    let length = 1.0;
    let count = 20usize;
    report.seed = Some(seed);
    report.input_f64("coupling", coupling);
    report.input_f64("length", length);
    report.input_list("n", &[4.0, 8.0]);
    report.input_int("samples-per-n", count as i64);
    for &n in &[4usize, 8] {
        let regular = closed_polyline(&regular_polygon(n, length))?;
        let e_reg =
            krein_points::polygon_ground_state(&regular, n, coupling, Dim::Two)?.energy;
        let mut min_gap = f64::INFINITY;
        for vertices in sample_polygons(seed, count, n, length) {
            let shape = closed_polyline(&vertices)?;
            let e =
                krein_points::polygon_ground_state(&shape, n, coupling, Dim::Two)?.energy;
            min_gap = min_gap.min(e_reg - e);
        }
        report.checks.push(CheckLine::property(
            &format!("regular-maximizes-e1[n={n}]"),
            min_gap,
            min_gap > 0.0,
            Provenance::PropertyBound,
        ));
    }
    Ok(report)
}

/// Chord inequalities behind the isoperimetric results: the circle maximizes
/// ∫|γ(s+u) − γ(s)|^p ds over loops for p ∈ {1, 2}, the regular polygon
/// maximizes the cyclic chord sums, and both attain their closed forms.
fn anchor_chord_bounds() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("chord-bounds");
    let seed = 7u64;
    let polygon_seed = 11u64;
    let length = 1.0;
    report.seed = Some(seed);
    report.input_int("polygon-seed", polygon_seed as i64);
    report.input_f64("length", length);
    report.input_list("u", &[0.1, 0.3, 0.5]);
    report.input_list("p", &[1.0, 2.0]);

    // Continuous: seeded loops against the circle value.
    let loops = sample_radial_loops(seed, 20, length);
    let mut violations = 0usize;
    let mut worst_margin = f64::INFINITY;
    for curve in &loops {
        for &u in &[0.1, 0.3, 0.5] {
            for &p in &[1.0, 2.0] {
                let got = chord_mean(curve, u * length, p)?;
                let cap = chord_circle_value(length, u * length, p);
                worst_margin = worst_margin.min(cap - got);
                if got > cap * (1.0 + 1e-12) {
                    violations += 1;
                }
            }
        }
    }
    report.checks.push(CheckLine::property(
        "loop-violations",
        violations as f64,
        violations == 0,
        Provenance::PropertyBound,
    ));
    report.checks.push(CheckLine::property(
        "loop-worst-margin",
        worst_margin,
        worst_margin >= 0.0,
        Provenance::PropertyBound,
    ));

    // Circle equality: quadrature against the closed form.
    let circle = ArcCurve::circle_of_length(length)?;
    let mut circle_dev: f64 = 0.0;
    for &u in &[0.1, 0.3, 0.5] {
        for &p in &[1.0, 2.0] {
            let got = chord_mean(&circle, u * length, p)?;
            let cap = chord_circle_value(length, u * length, p);
            circle_dev = circle_dev.max(((got - cap) / cap).abs());
        }
    }
    report.checks.push(CheckLine::property(
        "circle-equality-rel-dev",
        circle_dev,
        circle_dev <= 1e-8,
        Provenance::ClosedForm,
    ));

    // Discrete: equal-arclength sites on jittered polygons against the
    // regular polygon bound, for every shift k.
    let mut poly_violations = 0usize;
    let mut regular_dev: f64 = 0.0;
    for &n in &[4usize, 8] {
        for vertices in sample_polygons(polygon_seed, 20, n, length) {
            let shape = closed_polyline(&vertices)?;
            let h = length / n as f64;
            let sites: Vec<[f64; 2]> = (0..n).map(|j| shape.point(j as f64 * h)).collect();
            for k in 1..n {
                for &p in &[1.0, 2.0] {
                    let got = polygon_chord_sum(&sites, length, k, p)?;
                    let cap = polygon_chord_bound(n, length, k, p);
                    if got > cap * (1.0 + 1e-12) {
                        poly_violations += 1;
                    }
                }
            }
        }
        let reg = regular_polygon(n, length);
        for k in 1..n {
            for &p in &[1.0, 2.0] {
                let got = polygon_chord_sum(&reg, length, k, p)?;
                let cap = polygon_chord_bound(n, length, k, p);
                regular_dev = regular_dev.max(((got - cap) / cap).abs());
            }
        }
    }
    report.checks.push(CheckLine::property(
        "polygon-violations",
        poly_violations as f64,
        poly_violations == 0,
        Provenance::PropertyBound,
    ));
    report.checks.push(CheckLine::property(
        "regular-equality-rel-dev",
        regular_dev,
        regular_dev <= 1e-8,
        Provenance::ClosedForm,
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Anchors: approximation and polymer thresholds
// ---------------------------------------------------------------------------

/// Point-interaction approximation of a loop: ground energies converge to
/// the continuous solver's value with a fitted rate n^{−q}, q ∈ [0.3, 0.8].
fn anchor_approx_points() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("approx-points");
    let alpha = 5.0;
    let length = 1.0;
    let ns = [16usize, 32, 64, 128];
    report.input_f64("alpha", alpha);
    report.input_f64("length", length);
    report.input_list("n", &ns.map(|n| n as f64));
    report.input_f64("reference-density", 32.0);
    let circle = ArcCurve::circle_of_length(length)?;
    let graph = LeakyGraph::loop_graph(circle, alpha)?;
    let e_ref =
        bs_core::find_bound_states(&graph, 1, 1e-9, &MeshPolicy::with_density(32.0))?.states[0]
            .energy;
    let mut errs = Vec::new();
    for &n in &ns {
        let array = krein_points::approximate_graph(&graph, n)?;
        let res = krein_points::point_spectrum(&array, 1, 1e-9)?;
        let e_n = res.states.first().map(|s| s.energy).unwrap_or(f64::NAN);
        errs.push((e_n - e_ref).abs());
    }
    report.checks.push(CheckLine::property(
        "errors-decreasing",
        errs[errs.len() - 1],
        errs.windows(2).all(|w| w[1] < w[0]),
        Provenance::AnalyticLimit,
    ));
    let ln_n: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ln_e: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let rate = -ls_slope(&ln_n, &ln_e);
    report.checks.push(CheckLine::property(
        "fit-exponent",
        rate,
        (0.3..=0.8).contains(&rate),
        Provenance::AnalyticLimit,
    ));
    Ok(report)
}

/// 3D straight polymer: Richardson-extrapolated finite-chain ground energies
/// against the closed-form band edge.
fn anchor_polymer_3d() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("polymer-3d");
    let cases = [(-0.1, 1.0), (0.05, 1.0), (0.2, 0.5)];
    let ns = [50usize, 100, 200];
    report.input_list("coupling", &cases.map(|c| c.0));
    report.input_list("spacing", &cases.map(|c| c.1));
    report.input_list("n", &ns.map(|n| n as f64));
    for &(coupling, ell) in &cases {
        let closed = krein_points::polymer_threshold(Dim::Three, coupling, ell);
        let mut energies = Vec::new();
        for &n in &ns {
            let pts: Vec<[f64; 3]> = (0..n).map(|j| [0.0, 0.0, j as f64 * ell]).collect();
            let array = PointArray::new3d(&pts, &vec![coupling; n])?;
            let res = krein_points::point_spectrum(&array, 1, 1e-9)?;
            energies.push(res.states.first().map(|s| s.energy).unwrap_or(f64::NAN));
        }
        let richardson = (4.0 * energies[2] - energies[1]) / 3.0;
        report.checks.push(CheckLine::against(
            &format!("band-edge[coupling={coupling},spacing={ell}]"),
            richardson,
            closed,
            0.01 * closed.abs(),
            Provenance::ClosedForm,
        ));
    }
    Ok(report)
}

/// 2D straight polymer: the transfer-integral band edge against frozen
/// direct-sum oracle values, plus the strict gap below the single-point
/// energy ζ_β opened by the neighbors.
fn anchor_polymer_2d() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("polymer-2d");
    let ell = 1.0;
    let cases = [
        (-0.5, -675.22660017632472),
        (0.0, -2.7965835640015748),
        (0.5, -0.39708773808835623),
        (1.0, -0.14956540235333568),
    ];
    report.input_f64("spacing", ell);
    report.input_list("coupling", &cases.map(|c| c.0));
    for &(coupling, reference) in &cases {
        let e = krein_points::polymer_threshold(Dim::Two, coupling, ell);
        report.checks.push(CheckLine::against(
            &format!("band-edge[coupling={coupling}]"),
            e,
            reference,
            1e-9 * reference.abs(),
            Provenance::FrozenOracle,
        ));
        let zeta = greens::zeta_threshold(coupling);
        report.checks.push(CheckLine::property(
            &format!("below-zeta[coupling={coupling}]"),
            e - zeta,
            e < zeta,
            Provenance::PropertyBound,
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Anchors: perturbations and the line defect
// ---------------------------------------------------------------------------

/// Puncturing a bent line at the vertex: the energy shift is linear in the
/// removed length with slope 2α|ψ(0)|², verified within 5%.
fn anchor_hiatus_slope() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("hiatus-slope");
    let alpha = 5.0;
    let bend = std::f64::consts::PI / 9.0;
    let truncation = 0.5;
    let epsilons = [0.005, 0.01, 0.02];
    report.input_f64("alpha", alpha);
    report.input_f64("bend", bend);
    report.input_f64("truncation", truncation);
    report.input_list("epsilon", &epsilons);
    let star = StarConfig::new(&[bend], truncation)?;
    let hiatus =
        bs_core::hiatus_slope(&star, alpha, &epsilons, 1e-8, &MeshPolicy::default())?;
    report.checks.push(CheckLine::against(
        "slope-ratio",
        hiatus.ratio,
        1.0,
        0.05,
        Provenance::AnalyticLimit,
    ));
    report.checks.push(CheckLine::property(
        "unpunctured-below-threshold",
        hiatus.e0 + 0.25 * alpha * alpha,
        hiatus.e0 < -0.25 * alpha * alpha,
        Provenance::PropertyBound,
    ));
    Ok(report)
}

/// Line plus point interactions: the far-point dichotomy (deep point energy
/// survives, shallow point energy is absorbed toward −α²/4) and the counting
/// window 1 ≤ #σ_disc ≤ n on a randomized suite.
fn anchor_line_defect() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("line-defect");
    let seed = 23u64;
    let alpha = 5.0;
    let distances = [0.2, 0.4, 0.8, 1.6];
    report.seed = Some(seed);
    report.input_f64("alpha", alpha);
    report.input_list("distance", &distances);
    report.input_int("random-configs", 50);
    let threshold = -0.25 * alpha * alpha;

    // Deep point (ζ_β < −α²/4): E₁ converges to ζ_β as the point recedes.
    let beta_deep = -0.25;
    let zeta = greens::zeta_threshold(beta_deep);
    let mut deep_errs = Vec::new();
    for &a in &distances {
        let config = LineDefectConfig::new(alpha, vec![[0.0, a]], vec![beta_deep])?;
        let res = line_defect::line_defect_spectrum(&config, 1e-8)?;
        deep_errs.push((res.states[0].energy - zeta).abs());
    }
    report.checks.push(CheckLine::property(
        "deep-errors-decreasing",
        deep_errs[deep_errs.len() - 1],
        deep_errs.windows(2).all(|w| w[1] < w[0]),
        Provenance::AnalyticLimit,
    ));
    report.checks.push(CheckLine::against(
        "deep-limit",
        deep_errs[deep_errs.len() - 1],
        0.0,
        1e-6 * zeta.abs(),
        Provenance::AnalyticLimit,
    ));

    // Shallow point (ζ_β > −α²/4): E₁ is pulled up toward −α²/4 from below.
    let beta_shallow = 0.0;
    let mut gaps = Vec::new();
    for &a in &distances {
        let config = LineDefectConfig::new(alpha, vec![[0.0, a]], vec![beta_shallow])?;
        let res = line_defect::line_defect_spectrum(&config, 1e-8)?;
        gaps.push(threshold - res.states[0].energy);
    }
    report.checks.push(CheckLine::property(
        "shallow-gaps-decreasing",
        gaps[gaps.len() - 1],
        gaps.windows(2).all(|w| w[1] < w[0]) && gaps.iter().all(|&g| g > 0.0),
        Provenance::AnalyticLimit,
    ));
    report.checks.push(CheckLine::property(
        "shallow-limit-gap",
        gaps[gaps.len() - 1],
        gaps[gaps.len() - 1] > 0.0 && gaps[gaps.len() - 1] < 1e-3,
        Provenance::AnalyticLimit,
    ));

    // Randomized counting window.
    let mut count_violations = 0usize;
    let mut worst_margin = f64::NEG_INFINITY;
    for config in sample_line_defect_configs(seed, 50) {
        let res = line_defect::line_defect_spectrum(&config, 1e-8)?;
        let n = config.points.len();
        if res.states.is_empty() || res.states.len() > n {
            count_violations += 1;
        }
        for s in &res.states {
            worst_margin = worst_margin.max(s.energy - config.threshold());
        }
    }
    report.checks.push(CheckLine::property(
        "count-in-window",
        count_violations as f64,
        count_violations == 0,
        Provenance::PropertyBound,
    ));
    report.checks.push(CheckLine::property(
        "energies-below-threshold",
        worst_margin,
        worst_margin < 0.0,
        Provenance::PropertyBound,
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Anchors: comparison-operator bands and flux
// ---------------------------------------------------------------------------

/// Magnetic flux through a loop: the comparison-operator prediction μ₁(Φ)
/// disperses over Φ ∈ (0, π) and is 2π-periodic at solver precision.
fn anchor_flux_band() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("flux-band");
    let alpha = 5.0;
    let length = 1.0;
    let m = 128usize;
    let pi = std::f64::consts::PI;
    let fluxes = [0.25 * pi, 0.5 * pi, 0.75 * pi];
    report.input_f64("alpha", alpha);
    report.input_f64("length", length);
    report.input_int("grid", m as i64);
    report.input_list("flux", &fluxes);
    let circle = ArcCurve::circle_of_length(length)?;
    // Recover the solver's own enclosed area so flux values land exactly.
    let (area, _) = comparison::flux_dispersion(&circle, alpha, &[0.0], 1, m)?;
    let b_grid: Vec<f64> = fluxes.iter().map(|&f| f / area).collect();
    let (_, preds) = comparison::flux_dispersion(&circle, alpha, &b_grid, 1, m)?;
    let mus: Vec<f64> = preds.iter().map(|e| e + 0.25 * alpha * alpha).collect();
    let span = mus.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - mus.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    report.checks.push(CheckLine::property(
        "dispersion-span",
        span,
        span > 1.0,
        Provenance::PropertyBound,
    ));
    let mut periodicity_dev: f64 = 0.0;
    for &theta in &[0.7, 0.5 * pi] {
        let base = comparison::comparison_eigs(
            &ComparisonProblem::from_curve(&circle, m, Bc::Floquet(theta))?,
            1,
        )?[0];
        let shifted = comparison::comparison_eigs(
            &ComparisonProblem::from_curve(&circle, m, Bc::Floquet(theta + 2.0 * pi))?,
            1,
        )?[0];
        periodicity_dev = periodicity_dev.max((base - shifted).abs());
    }
    report.checks.push(CheckLine::property(
        "two-pi-periodicity-dev",
        periodicity_dev,
        periodicity_dev <= 1e-10,
        Provenance::PropertyBound,
    ));
    Ok(report)
}

/// Band structure of the periodic comparison operator: constant curvature
/// leaves the free bands touching, a strong nonconstant profile opens a gap.
fn anchor_curvature_gap() -> Result<ExperimentReport, ExperimentError> {
    let mut report = ExperimentReport::new("curvature-gap");
    let length = 1.0;
    let m = 128usize;
    let pi = std::f64::consts::PI;
    report.input_f64("length", length);
    report.input_int("grid", m as i64);
    report.input_f64("profile-amplitude", 6.0);
    let theta_grid: Vec<f64> = (0..33).map(|i| -pi + i as f64 * pi / 16.0).collect();
    let free = comparison::band_structure(&|_| 0.0, length, m, &theta_grid, 3)?;
    report.checks.push(CheckLine::property(
        "free-open-gaps",
        free.gaps.len() as f64,
        free.gaps.is_empty(),
        Provenance::ClosedForm,
    ));
    let profile = |s: f64| 6.0 * (2.0 * pi * s / length).cos();
    let curved = comparison::band_structure(&profile, length, m, &theta_grid, 3)?;
    let first_gap = curved.gaps.first().map(|g| g.1 - g.0).unwrap_or(0.0);
    report.checks.push(CheckLine::property(
        "curved-first-gap-width",
        first_gap,
        !curved.gaps.is_empty() && first_gap > 0.0,
        Provenance::PropertyBound,
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_anchor_id_is_rejected() {
        match run_anchor("no-such-anchor") {
            Err(ExperimentError::UnknownId(id)) => assert_eq!(id, "no-such-anchor"),
            other => panic!("expected UnknownId, got {other:?}"),
        }
    }

    #[test]
    fn exact_circle_root_matches_frozen_values() {
        // Independently computed high-precision roots of αR·I₀(κR)K₀(κR) = 1
        // for circumference 1.
        for (alpha, kappa) in [
            (5.0, 2.236_149_967_378_401_0),
            (20.0, 10.498_992_232_578_654),
            (80.0, 40.128_594_929_923_807),
        ] {
            let got = circle_exact_kappa(alpha, 1.0);
            assert!(
                ((got - kappa) / kappa).abs() < 1e-12,
                "alpha={alpha}: got {got}, want {kappa}"
            );
        }
    }

    #[test]
    fn point_zeta_anchor_passes_and_serializes() {
        let report = run_anchor("point-zeta").unwrap();
        assert!(report.passed(), "checks: {:?}", report.checks);
        assert_eq!(report.checks.len(), 3);
        let doc = report.to_document();
        assert!(doc.starts_with("schema = 1\nkind = \"anchor-report\"\nid = \"point-zeta\"\n"));
        assert!(doc.contains("passed = true"));
        assert!(doc.contains("[[check]]"));
        assert!(doc.contains("provenance = \"closed form\""));
        // Deterministic: a second run serializes byte-identically.
        let again = run_anchor("point-zeta").unwrap();
        assert_eq!(doc, again.to_document());
    }

    #[test]
    fn float_rendering_round_trips_exactly() {
        for x in [
            0.0,
            1.0,
            -0.5,
            6.02e23,
            5e-324,
            -4.3973539055699482391e-6,
            std::f64::consts::PI,
        ] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} rendered as {s}");
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn loop_family_is_deterministic_and_on_length() {
        let a = sample_radial_loops(7, 3, 1.0);
        let b = sample_radial_loops(7, 3, 1.0);
        assert_eq!(a.len(), 3);
        for (ca, cb) in a.iter().zip(b.iter()) {
            assert!((ca.length() - 1.0).abs() < 1e-12);
            assert!(ca.is_closed());
            for &s in &[0.0, 0.3, 0.77] {
                let (pa, pb) = (ca.point(s), cb.point(s));
                assert_eq!(pa[0].to_bits(), pb[0].to_bits());
                assert_eq!(pa[1].to_bits(), pb[1].to_bits());
            }
        }
    }

    #[test]
    fn polygon_family_keeps_perimeter_and_avoids_regularity() {
        for polygon in sample_polygons(11, 5, 4, 1.0) {
            let perim: f64 = (0..4)
                .map(|j| {
                    let a = polygon[j];
                    let b = polygon[(j + 1) % 4];
                    (a[0] - b[0]).hypot(a[1] - b[1])
                })
                .sum();
            assert!((perim - 1.0).abs() < 1e-12, "perimeter {perim}");
            // Sides of the regular 4-gon of perimeter 1 are all 0.25; a
            // jittered draw must differ visibly somewhere.
            let max_side_dev = (0..4)
                .map(|j| {
                    let a = polygon[j];
                    let b = polygon[(j + 1) % 4];
                    ((a[0] - b[0]).hypot(a[1] - b[1]) - 0.25f64).abs()
                })
                .fold(0.0f64, f64::max);
            assert!(max_side_dev > 1e-4, "draw is indistinguishable from regular");
        }
    }

    #[test]
    fn polymer_2d_anchor_matches_frozen_oracle() {
        let report = run_anchor("polymer-2d").unwrap();
        assert!(report.passed(), "checks: {:?}", report.checks);
        assert_eq!(report.checks.len(), 8);
    }

    #[test]
    fn curvature_gap_anchor_opens_gap() {
        let report = run_anchor("curvature-gap").unwrap();
        assert!(report.passed(), "checks: {:?}", report.checks);
    }
}
