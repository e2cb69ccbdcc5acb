//! Arc-length geometry: curves γ: [0,L] → ℝ² with |γ′| = 1, leaky graphs,
//! star configurations, and point arrays.
//!
//! Everything downstream consumes arc-length coordinates — the
//! Birman–Schwinger kernel is (α/2π)K₀(κ|γ(s)−γ(s′)|), the comparison
//! operator needs the signed curvature k(s) — so curves constructed from
//! non-arc-length data (Fourier loops) are reparametrized numerically by
//! cumulative-length inversion, to unit-speed tolerance 1e−8 on sample grids.
//!
//! Distances on star graphs use the planar law of cosines
//! d_{ij}(s,s′) = √(s² + s′² − 2ss′cos|ϑ_j − ϑ_i|), which avoids embedding
//! round-off at small angles.

use crate::greens::Dim;
use crate::quad::gl16;
use thiserror::Error;

/// Errors from curve and graph construction.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("curve is degenerate (zero or negative length)")]
    Degenerate,
    #[error("self-intersection detected (clearance {0:.3e})")]
    SelfIntersection(f64),
    #[error("open curve supplied where a closed loop is required")]
    OpenCurve,
    #[error("radius function must stay positive (min r = {0:.3e})")]
    NonpositiveRadius(f64),
    #[error("coupling alpha must be positive, got {0}")]
    NonpositiveAlpha(f64),
    #[error("edges {0} and {1} meet tangentially (angle {2:.3e} rad)")]
    TangentialJunction(usize, usize, f64),
    #[error("star angles must be positive with sum below 2π")]
    BadStarAngles,
    #[error("ray index {0} out of range (N = {1})")]
    RayIndex(usize, usize),
    #[error("points must be pairwise distinct (min spacing {0:.3e})")]
    CoincidentPoints(f64),
    #[error("site spacing {got:.6e} exceeds L/N = {bound:.6e} at site {site}")]
    SpacingViolated { site: usize, got: f64, bound: f64 },
    #[error("chord shift must lie strictly inside (0, L)")]
    BadChordShift,
    #[error("{0} couplings supplied for {1} points")]
    AlphaCount(usize, usize),
}

// ---------------------------------------------------------------------------
// ArcCurve
// ---------------------------------------------------------------------------

/// One harmonic of a radial loop r(θ) = 1 + Σ (a·cos kθ + b·sin kθ).
#[derive(Clone, Copy, Debug)]
pub struct RadialHarmonic {
    pub k: u32,
    pub a: f64,
    pub b: f64,
}

#[derive(Clone, Debug)]
enum CurveKind {
    Segment {
        start: [f64; 2],
        dir: [f64; 2],
    },
    Circle {
        center: [f64; 2],
        radius: f64,
    },
    FourierLoop {
        harmonics: Vec<RadialHarmonic>,
        /// Uniform rescale from the raw radial curve to the requested length.
        scale: f64,
        /// θ grid (uniform on [0, 2π]) and cumulative raw arc length on it.
        theta_grid: Vec<f64>,
        cum_len: Vec<f64>,
        raw_len: f64,
    },
    Polyline {
        pts: Vec<[f64; 2]>,
        cum: Vec<f64>,
    },
}

/// A planar curve parametrized by arc length: γ(s), s ∈ [0, L], |γ′(s)| = 1.
#[derive(Clone, Debug)]
pub struct ArcCurve {
    kind: CurveKind,
    length: f64,
    closed: bool,
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl ArcCurve {
    /// Straight segment from `a` to `b`.
    pub fn segment(a: [f64; 2], b: [f64; 2]) -> Result<Self, GeometryError> {
        let l = dist2(a, b);
        if l <= 0.0 {
            return Err(GeometryError::Degenerate);
        }
        Ok(ArcCurve {
            kind: CurveKind::Segment {
                start: a,
                dir: [(b[0] - a[0]) / l, (b[1] - a[1]) / l],
            },
            length: l,
            closed: false,
        })
    }

    /// Circle of given radius, traversed counterclockwise from the point
    /// center + (R, 0).
    pub fn circle(center: [f64; 2], radius: f64) -> Result<Self, GeometryError> {
        if radius <= 0.0 {
            return Err(GeometryError::Degenerate);
        }
        Ok(ArcCurve {
            kind: CurveKind::Circle { center, radius },
            length: 2.0 * std::f64::consts::PI * radius,
            closed: true,
        })
    }

    /// Circle of circumference `l` centered at the origin.
    pub fn circle_of_length(l: f64) -> Result<Self, GeometryError> {
        Self::circle([0.0, 0.0], l / (2.0 * std::f64::consts::PI))
    }

    /// Open circular arc of length `arc_len` < 2πR, traversed
    /// counterclockwise from center + (R, 0).
    pub fn circular_arc(
        center: [f64; 2],
        radius: f64,
        arc_len: f64,
    ) -> Result<Self, GeometryError> {
        if radius <= 0.0 || arc_len <= 0.0 {
            return Err(GeometryError::Degenerate);
        }
        if arc_len >= 2.0 * std::f64::consts::PI * radius {
            return Err(GeometryError::Degenerate);
        }
        Ok(ArcCurve {
            kind: CurveKind::Circle { center, radius },
            length: arc_len,
            closed: false,
        })
    }

    /// Open polyline through the given points (closed if first = last).
    pub fn polyline(pts: &[[f64; 2]]) -> Result<Self, GeometryError> {
        if pts.len() < 2 {
            return Err(GeometryError::Degenerate);
        }
        let mut cum = vec![0.0];
        for w in pts.windows(2) {
            let d = dist2(w[0], w[1]);
            if d <= 0.0 {
                return Err(GeometryError::Degenerate);
            }
            cum.push(cum.last().unwrap() + d);
        }
        let length = *cum.last().unwrap();
        let closed = dist2(pts[0], *pts.last().unwrap()) < 1e-10 * length;
        Ok(ArcCurve {
            kind: CurveKind::Polyline {
                pts: pts.to_vec(),
                cum,
            },
            length,
            closed,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Wrap (closed) or clamp (open) an arc coordinate into [0, L].
    fn canon(&self, s: f64) -> f64 {
        if self.closed {
            s.rem_euclid(self.length)
        } else {
            s.clamp(0.0, self.length)
        }
    }

    /// γ(s).
    pub fn point(&self, s: f64) -> [f64; 2] {
        let s = self.canon(s);
        match &self.kind {
            CurveKind::Segment { start, dir } => {
                [start[0] + s * dir[0], start[1] + s * dir[1]]
            }
            CurveKind::Circle { center, radius } => {
                let th = s / radius;
                [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
            }
            CurveKind::FourierLoop {
                harmonics, scale, ..
            } => {
                let th = self.loop_theta(s);
                let (r, _, _) = radial_r(harmonics, th);
                [scale * r * th.cos(), scale * r * th.sin()]
            }
            CurveKind::Polyline { pts, cum } => {
                let i = seg_index(cum, s);
                let t = (s - cum[i]) / (cum[i + 1] - cum[i]);
                [
                    pts[i][0] + t * (pts[i + 1][0] - pts[i][0]),
                    pts[i][1] + t * (pts[i + 1][1] - pts[i][1]),
                ]
            }
        }
    }

    /// Unit tangent γ′(s).
    pub fn tangent(&self, s: f64) -> [f64; 2] {
        let s = self.canon(s);
        match &self.kind {
            CurveKind::Segment { dir, .. } => *dir,
            CurveKind::Circle { radius, .. } => {
                let th = s / radius;
                [-th.sin(), th.cos()]
            }
            CurveKind::FourierLoop { harmonics, .. } => {
                let th = self.loop_theta(s);
                let (r, rp, _) = radial_r(harmonics, th);
                let xp = rp * th.cos() - r * th.sin();
                let yp = rp * th.sin() + r * th.cos();
                let sp = xp.hypot(yp);
                [xp / sp, yp / sp]
            }
            CurveKind::Polyline { pts, cum } => {
                let i = seg_index(cum, s);
                let l = cum[i + 1] - cum[i];
                [
                    (pts[i + 1][0] - pts[i][0]) / l,
                    (pts[i + 1][1] - pts[i][1]) / l,
                ]
            }
        }
    }

    /// Signed curvature k(s); zero on straight pieces.
    pub fn curvature(&self, s: f64) -> f64 {
        let s = self.canon(s);
        match &self.kind {
            CurveKind::Segment { .. } | CurveKind::Polyline { .. } => 0.0,
            CurveKind::Circle { radius, .. } => 1.0 / radius,
            CurveKind::FourierLoop {
                harmonics, scale, ..
            } => {
                let th = self.loop_theta(s);
                let (r, rp, rpp) = radial_r(harmonics, th);
                // Polar curvature (r² + 2r′² − r r″) / (r² + r′²)^{3/2},
                // rescaled by 1/scale for the uniform dilation.
                let num = r * r + 2.0 * rp * rp - r * rpp;
                let den = (r * r + rp * rp).powf(1.5);
                num / den / scale
            }
        }
    }

    /// m+1 polyline samples at uniform arc spacing (including both ends).
    pub fn sample_polyline(&self, m: usize) -> Vec<[f64; 2]> {
        (0..=m)
            .map(|i| self.point(self.length * i as f64 / m as f64))
            .collect()
    }

    /// θ such that the raw cumulative arc length equals s/scale, by bracketed
    /// Newton iteration on the cumulative-length table.
    fn loop_theta(&self, s: f64) -> f64 {
        let CurveKind::FourierLoop {
            harmonics,
            scale,
            theta_grid,
            cum_len,
            raw_len,
        } = &self.kind
        else {
            unreachable!("loop_theta on non-loop curve")
        };
        let ell = (s / scale).clamp(0.0, *raw_len);
        // Bracketing cell in the cumulative table.
        let mut i = cum_len.partition_point(|&c| c < ell);
        i = i.saturating_sub(1).min(theta_grid.len() - 2);
        let cell_lo = theta_grid[i];
        let base = cum_len[i];
        let (mut lo, mut hi) = (theta_grid[i], theta_grid[i + 1]);
        let speed = |th: f64| {
            let (r, rp, _) = radial_r(harmonics, th);
            r.hypot(rp)
        };
        let mut th = lo + (hi - lo) * (ell - base) / (cum_len[i + 1] - base).max(1e-300);
        for _ in 0..60 {
            // Residual of the cumulative length, always measured from the
            // fixed cell boundary (the bisection bounds only safeguard).
            let g = base + gl16(speed, cell_lo, th) - ell;
            if g.abs() < 1e-14 * (1.0 + ell) {
                break;
            }
            if g > 0.0 {
                hi = th;
            } else {
                lo = th;
            }
            let next = th - g / speed(th);
            th = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo < 1e-15 {
                break;
            }
        }
        th
    }
}

/// r(θ), r′(θ), r″(θ) for a radial harmonic sum.
fn radial_r(harmonics: &[RadialHarmonic], th: f64) -> (f64, f64, f64) {
    let (mut r, mut rp, mut rpp) = (1.0, 0.0, 0.0);
    for h in harmonics {
        let kf = h.k as f64;
        let (s, c) = (kf * th).sin_cos();
        r += h.a * c + h.b * s;
        rp += kf * (-h.a * s + h.b * c);
        rpp += kf * kf * (-h.a * c - h.b * s);
    }
    (r, rp, rpp)
}

/// Index of the polyline segment containing arc position s.
fn seg_index(cum: &[f64], s: f64) -> usize {
    cum.partition_point(|&c| c <= s)
        .saturating_sub(1)
        .min(cum.len() - 2)
}

/// Build a closed loop from radial harmonics, reparametrized to unit speed
/// and uniformly rescaled to total length `length`.
///
/// Rejects loops whose radius function dips below 1e−6 and loops whose
/// sampled polyline self-intersects (clearance below 1e−9·L).
pub fn make_fourier_loop(
    harmonics: &[RadialHarmonic],
    length: f64,
) -> Result<ArcCurve, GeometryError> {
    if length <= 0.0 {
        return Err(GeometryError::Degenerate);
    }
    const M: usize = 2048;
    let two_pi = 2.0 * std::f64::consts::PI;
    // Radius positivity on a fine grid.
    let mut r_min = f64::INFINITY;
    for i in 0..4 * M {
        let (r, _, _) = radial_r(harmonics, two_pi * i as f64 / (4 * M) as f64);
        r_min = r_min.min(r);
    }
    if r_min <= 1e-6 {
        return Err(GeometryError::NonpositiveRadius(r_min));
    }
    // Cumulative raw arc length on a uniform θ grid.
    let speed = |th: f64| {
        let (r, rp, _) = radial_r(harmonics, th);
        r.hypot(rp)
    };
    let theta_grid: Vec<f64> = (0..=M).map(|i| two_pi * i as f64 / M as f64).collect();
    let mut cum_len = Vec::with_capacity(M + 1);
    cum_len.push(0.0);
    for i in 0..M {
        let inc = gl16(speed, theta_grid[i], theta_grid[i + 1]);
        cum_len.push(cum_len[i] + inc);
    }
    let raw_len = *cum_len.last().unwrap();
    if raw_len <= 0.0 {
        return Err(GeometryError::Degenerate);
    }
    // Self-intersection sweep on the raw sampled polyline.
    let pts: Vec<[f64; 2]> = (0..M)
        .step_by(2)
        .map(|i| {
            let th = theta_grid[i];
            let (r, _, _) = radial_r(harmonics, th);
            [r * th.cos(), r * th.sin()]
        })
        .collect();
    if let Some(clear) = polyline_self_intersection(&pts, true, 1e-9 * raw_len) {
        return Err(GeometryError::SelfIntersection(clear));
    }
    let scale = length / raw_len;
    Ok(ArcCurve {
        kind: CurveKind::FourierLoop {
            harmonics: harmonics.to_vec(),
            scale,
            theta_grid,
            cum_len,
            raw_len,
        },
        length,
        closed: true,
    })
}

/// Smallest clearance between non-adjacent segments of a polyline if it is
/// below `tol` (i.e. the polyline self-intersects or nearly does), else None.
pub fn polyline_self_intersection(pts: &[[f64; 2]], closed: bool, tol: f64) -> Option<f64> {
    let n = if closed { pts.len() } else { pts.len() - 1 };
    let seg = |i: usize| (pts[i], pts[(i + 1) % pts.len()]);
    let mut worst: Option<f64> = None;
    for i in 0..n {
        for j in (i + 2)..n {
            // Adjacent segments share an endpoint; on a closed loop the last
            // and first are adjacent as well.
            if closed && i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            let gap = segment_gap(a, b, c, d);
            if gap < tol {
                worst = Some(worst.map_or(gap, |w: f64| w.min(gap)));
            }
        }
    }
    worst
}

/// Euclidean gap between two segments (0 if they properly intersect).
fn segment_gap(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let cross = |o: [f64; 2], p: [f64; 2], q: [f64; 2]| {
        (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])
    };
    let (d1, d2) = (cross(a, b, c), cross(a, b, d));
    let (d3, d4) = (cross(c, d, a), cross(c, d, b));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return 0.0;
    }
    point_segment_dist(c, a, b)
        .min(point_segment_dist(d, a, b))
        .min(point_segment_dist(a, c, d))
        .min(point_segment_dist(b, c, d))
}

fn point_segment_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (vx, vy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = vx * vx + vy * vy;
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    dist2(p, [a[0] + t * vx, a[1] + t * vy])
}

// ---------------------------------------------------------------------------
// LeakyGraph
// ---------------------------------------------------------------------------

/// A planar graph Γ carrying the attractive interaction −α δ(x−Γ).
///
/// `truncation` records the effective length used to truncate semi-infinite
/// edges; when present, the essential-spectrum threshold −α²/4 of the
/// untruncated model is used as the search ceiling for bound states.
#[derive(Clone, Debug)]
pub struct LeakyGraph {
    pub edges: Vec<ArcCurve>,
    pub alpha: f64,
    pub truncation: Option<f64>,
    /// Per-edge sorted arc positions where the mesh must be refined
    /// (junction endpoints, interior crossings, free tips).
    refine: Vec<Vec<f64>>,
}

impl LeakyGraph {
    /// Assemble a graph, detect junctions and interior crossings, and verify
    /// that edges meet at nonzero angles.
    pub fn new(edges: Vec<ArcCurve>, alpha: f64) -> Result<Self, GeometryError> {
        if alpha <= 0.0 {
            return Err(GeometryError::NonpositiveAlpha(alpha));
        }
        if edges.is_empty() {
            return Err(GeometryError::Degenerate);
        }
        let scale = edges
            .iter()
            .map(|e| e.length)
            .fold(f64::NEG_INFINITY, f64::max);
        let tol = 1e-9 * scale;

        let mut refine: Vec<Vec<f64>> = edges.iter().map(|_| Vec::new()).collect();
        // Open-edge endpoints always get refinement: junction or free tip.
        for (e, curve) in edges.iter().enumerate() {
            if !curve.is_closed() {
                refine[e].push(0.0);
                refine[e].push(curve.length);
            }
        }
        // Junction angle checks on shared endpoints of open edges.
        let ends = |c: &ArcCurve| [(0.0, 1.0), (c.length, -1.0)];
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if edges[i].is_closed() || edges[j].is_closed() {
                    continue;
                }
                for (si, ori) in ends(&edges[i]) {
                    for (sj, orj) in ends(&edges[j]) {
                        if dist2(edges[i].point(si), edges[j].point(sj)) < tol {
                            let ti = edges[i].tangent(si);
                            let tj = edges[j].tangent(sj);
                            // Outgoing directions from the junction.
                            let u = [ori * ti[0], ori * ti[1]];
                            let v = [orj * tj[0], orj * tj[1]];
                            let dot = (u[0] * v[0] + u[1] * v[1]).clamp(-1.0, 1.0);
                            let angle = dot.acos();
                            if angle < 1e-6 {
                                return Err(GeometryError::TangentialJunction(i, j, angle));
                            }
                        }
                    }
                }
            }
        }
        // Interior crossings between distinct edges (e.g. the cross graph):
        // polyline sweep, arc positions recorded for mesh grading.
        let m = 512;
        let polys: Vec<Vec<[f64; 2]>> = edges.iter().map(|e| e.sample_polyline(m)).collect();
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                for a in 0..m {
                    for b in 0..m {
                        let (pa, pb) = (polys[i][a], polys[i][a + 1]);
                        let (qc, qd) = (polys[j][b], polys[j][b + 1]);
                        if segment_gap(pa, pb, qc, qd) < tol {
                            let si = edges[i].length * (a as f64 + 0.5) / m as f64;
                            let sj = edges[j].length * (b as f64 + 0.5) / m as f64;
                            // Skip crossings at already-refined endpoints.
                            let hi = edges[i].length;
                            let hj = edges[j].length;
                            if si > 1e-6 * hi && si < hi * (1.0 - 1e-6) {
                                refine[i].push(si);
                            }
                            if sj > 1e-6 * hj && sj < hj * (1.0 - 1e-6) {
                                refine[j].push(sj);
                            }
                        }
                    }
                }
            }
        }
        for r in refine.iter_mut() {
            r.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // Merge near-duplicates from the polyline sweep.
            r.dedup_by(|a, b| (*a - *b).abs() < 1e-3 * scale);
        }
        Ok(LeakyGraph {
            edges,
            alpha,
            truncation: None,
            refine,
        })
    }

    /// Mark the graph as a truncation of a model with semi-infinite edges.
    pub fn with_truncation(mut self, t: f64) -> Self {
        self.truncation = Some(t);
        self
    }

    /// Single closed loop.
    pub fn loop_graph(curve: ArcCurve, alpha: f64) -> Result<Self, GeometryError> {
        if !curve.is_closed() {
            return Err(GeometryError::OpenCurve);
        }
        Self::new(vec![curve], alpha)
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Sorted arc positions on edge `e` where the mesh should refine.
    pub fn refinement_points(&self, e: usize) -> &[f64] {
        &self.refine[e]
    }
}

// ---------------------------------------------------------------------------
// StarConfig
// ---------------------------------------------------------------------------

/// Star graph: N semi-infinite rays from the origin separated by angles
/// β_1, …, β_{N−1} with β_N = 2π − Σβ_j > 0; truncated at `edge_truncation`
/// for computation.
#[derive(Clone, Debug)]
pub struct StarConfig {
    pub n: usize,
    /// All N angles, the last one implied by closure around 2π.
    pub beta: Vec<f64>,
    pub edge_truncation: f64,
    /// ϑ_j = Σ_{i≤j} β_i with ϑ_0 = 0 (ray directions).
    theta: Vec<f64>,
}

impl StarConfig {
    /// Build from the N−1 free angles.
    pub fn new(beta_free: &[f64], edge_truncation: f64) -> Result<Self, GeometryError> {
        let n = beta_free.len() + 1;
        if n < 2 || edge_truncation <= 0.0 {
            return Err(GeometryError::BadStarAngles);
        }
        let sum: f64 = beta_free.iter().sum();
        let last = 2.0 * std::f64::consts::PI - sum;
        if beta_free.iter().any(|&b| b <= 0.0) || last <= 0.0 {
            return Err(GeometryError::BadStarAngles);
        }
        let mut beta = beta_free.to_vec();
        beta.push(last);
        let mut theta = vec![0.0];
        for j in 0..n - 1 {
            theta.push(theta[j] + beta[j]);
        }
        Ok(StarConfig {
            n,
            beta,
            edge_truncation,
            theta,
        })
    }

    /// Direction angle ϑ_j of ray j (0-based, ϑ_0 = 0).
    pub fn theta(&self, j: usize) -> Result<f64, GeometryError> {
        self.theta
            .get(j)
            .copied()
            .ok_or(GeometryError::RayIndex(j, self.n))
    }

    /// Euclidean distance between arc position s on ray i and s′ on ray j:
    /// √(s² + s′² − 2ss′cos|ϑ_j − ϑ_i|); |s − s′| on the same ray.
    pub fn star_distance(
        &self,
        i: usize,
        j: usize,
        s: f64,
        sp: f64,
    ) -> Result<f64, GeometryError> {
        if i >= self.n {
            return Err(GeometryError::RayIndex(i, self.n));
        }
        if j >= self.n {
            return Err(GeometryError::RayIndex(j, self.n));
        }
        if i == j {
            return Ok((s - sp).abs());
        }
        let c = (self.theta[j] - self.theta[i]).cos();
        Ok((s * s + sp * sp - 2.0 * s * sp * c).max(0.0).sqrt())
    }

    /// Truncate the rays and assemble the leaky graph (origin is a junction).
    pub fn to_graph(&self, alpha: f64) -> Result<LeakyGraph, GeometryError> {
        let t = self.edge_truncation;
        let edges = self
            .theta
            .iter()
            .map(|&th| ArcCurve::segment([0.0, 0.0], [t * th.cos(), t * th.sin()]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LeakyGraph::new(edges, alpha)?.with_truncation(t))
    }
}

// ---------------------------------------------------------------------------
// PointArray
// ---------------------------------------------------------------------------

/// Finitely many point interactions in ℝ² or ℝ³ with per-point couplings
/// (point-interaction convention: larger α means weaker binding).
#[derive(Clone, Debug)]
pub struct PointArray {
    pub dim: Dim,
    points: Vec<[f64; 3]>,
    pub alphas: Vec<f64>,
}

impl PointArray {
    pub fn new2d(points: &[[f64; 2]], alphas: &[f64]) -> Result<Self, GeometryError> {
        let lifted: Vec<[f64; 3]> = points.iter().map(|p| [p[0], p[1], 0.0]).collect();
        Self::build(Dim::Two, lifted, alphas)
    }

    pub fn new3d(points: &[[f64; 3]], alphas: &[f64]) -> Result<Self, GeometryError> {
        Self::build(Dim::Three, points.to_vec(), alphas)
    }

    fn build(dim: Dim, points: Vec<[f64; 3]>, alphas: &[f64]) -> Result<Self, GeometryError> {
        if alphas.len() != points.len() {
            return Err(GeometryError::AlphaCount(alphas.len(), points.len()));
        }
        let arr = PointArray {
            dim,
            points,
            alphas: alphas.to_vec(),
        };
        if arr.len() > 1 {
            let m = arr.min_spacing();
            if m <= 0.0 {
                return Err(GeometryError::CoincidentPoints(m));
            }
        }
        Ok(arr)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> [f64; 3] {
        self.points[i]
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.points[i], self.points[j]);
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    pub fn min_spacing(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                m = m.min(self.dist(i, j));
            }
        }
        m
    }
}

// ---------------------------------------------------------------------------
// Chord bounds
// ---------------------------------------------------------------------------

/// ∫₀^L |γ(s+u) − γ(s)|^p ds for a closed loop, by composite Gauss–Legendre
/// panels (the integrand is smooth and strictly positive for 0 < u < L).
pub fn chord_mean(curve: &ArcCurve, u: f64, p: f64) -> Result<f64, GeometryError> {
    if !curve.is_closed() {
        return Err(GeometryError::OpenCurve);
    }
    let l = curve.length();
    if u <= 0.0 || u >= l {
        return Err(GeometryError::BadChordShift);
    }
    let f = |s: f64| {
        let d = dist2(curve.point(s + u), curve.point(s));
        d.powf(p)
    };
    Ok(crate::quad::gl16_composite(f, 0.0, l, 256))
}

/// The circle's chord integral (L^{1+p}/π^p)·sin^p(πu/L) — the maximizer of
/// [`chord_mean`] over loops of length L for p ∈ (0, 2].
pub fn chord_circle_value(l: f64, u: f64, p: f64) -> f64 {
    let pi = std::f64::consts::PI;
    l.powf(1.0 + p) / pi.powf(p) * (pi * u / l).sin().powf(p)
}

/// Σ_{j=1}^N |y_{j+k} − y_j|^p over a cyclic point array sampled from a loop
/// of length `loop_len`, with the spacing precondition |y_{j+1} − y_j| ≤ L/N.
pub fn polygon_chord_sum(
    points: &[[f64; 2]],
    loop_len: f64,
    k: usize,
    p: f64,
) -> Result<f64, GeometryError> {
    let n = points.len();
    let bound = loop_len / n as f64;
    for j in 0..n {
        let d = dist2(points[j], points[(j + 1) % n]);
        if d > bound * (1.0 + 1e-12) {
            return Err(GeometryError::SpacingViolated {
                site: j,
                got: d,
                bound,
            });
        }
    }
    Ok((0..n)
        .map(|j| dist2(points[(j + k) % n], points[j]).powf(p))
        .sum())
}

/// The regular polygon's value N^{1−p}·L^p·sin^p(πk/N)/sin^p(π/N) — the
/// maximizer of [`polygon_chord_sum`] under the spacing precondition.
pub fn polygon_chord_bound(n: usize, loop_len: f64, k: usize, p: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let nf = n as f64;
    nf.powf(1.0 - p) * loop_len.powf(p) * (pi * k as f64 / nf).sin().powf(p)
        / (pi / nf).sin().powf(p)
}

/// Vertices of the regular N-gon of perimeter L (side exactly L/N).
pub fn regular_polygon(n: usize, loop_len: f64) -> Vec<[f64; 2]> {
    let pi = std::f64::consts::PI;
    let r = (loop_len / n as f64) / (2.0 * (pi / n as f64).sin());
    (0..n)
        .map(|j| {
            let th = 2.0 * pi * j as f64 / n as f64;
            [r * th.cos(), r * th.sin()]
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
