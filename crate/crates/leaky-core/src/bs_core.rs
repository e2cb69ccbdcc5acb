//! Birman–Schwinger bound-state solver for leaky graphs.
//!
//! −κ² is a discrete eigenvalue of −Δ − αδ(x−Γ) exactly when the integral
//! operator on Γ with kernel (α/2π)K₀(κ|γ(s)−γ(s′)|) has eigenvalue 1.
//! Each eigenvalue μ_j(κ) is continuous and strictly decreasing in κ and
//! tends to 0 as κ → ∞, so the spectral problem reduces to 1D root finding:
//! bracket the crossing μ_j(κ) = 1, bisect, polish.
//!
//! Discretization is a Nyström scheme on 8-point Gauss–Legendre panels.
//! Near the diagonal the kernel is split as K₀(κd) = −I₀(κd)·ln|s−s′| + R
//! with R smooth, the log factor integrated by product weights and R by
//! plain Gauss–Legendre; the diagonal limit of R is −ln(κ/2) − γ. Meshes are
//! geometrically graded toward graph vertices, where cross-edge kernel
//! blocks are log-singular at the corner.
//!
//! The matrix is similarity-symmetrized with D^{1/2} (D = diag of weights),
//! so eigenvectors v of the symmetric matrix give node densities
//! φ = D^{−1/2}v with unit discrete L²(Γ) norm Σ w φ² = 1.

use crate::geometry::LeakyGraph;
use crate::greens::{self, EULER_GAMMA};
use crate::linalg::{self, SymMat};
use crate::quad::{graded_partition, growing_partition, log_weights, GL8_W, GL8_X};
use thiserror::Error;

/// Errors from assembly and spectral solving.
#[derive(Debug, Error)]
pub enum BsError {
    #[error("kappa must be positive, got {0}")]
    NonpositiveKappa(f64),
    #[error("mesh density {0} is below the minimum of 8 nodes per unit of 1/κ")]
    MeshTooCoarse(f64),
    #[error("eigenvalue index {0} exceeds matrix dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("tolerance {0:.3e} outside the supported range [1e-10, 1e-4]")]
    BadTolerance(f64),
    #[error("no μ₁ = 1 crossing found (sup μ₁ ≈ {0:.6}); mesh or truncation fault")]
    NoGroundState(f64),
    #[error("puncture half-width {0:.3e} exceeds 5% of the curve length {1:.3e}")]
    PunctureTooLarge(f64, f64),
}

/// Mesh policy: panel width 8/(density·κ_ref) with κ_ref = max(α, κ), graded
/// geometrically toward refinement points; optionally growing outward along
/// truncated leads.
#[derive(Clone, Copy, Debug)]
pub struct MeshPolicy {
    /// Nodes per unit of 1/κ_ref; the spec floor is 8, default 16.
    pub density: f64,
    pub grade_ratio: f64,
    pub grade_levels: usize,
    /// If set, the tail-end interval of each open edge keeps the uniform
    /// width only out to `uniform_span`/κ_ref, then widths grow by `factor`
    /// per panel up to `cap`/κ_ref. Calibrated for star-graph leads whose
    /// bound states decay on the 1/κ scale.
    pub grow: Option<GrowPolicy>,
}

#[derive(Clone, Copy, Debug)]
pub struct GrowPolicy {
    pub uniform_span: f64,
    pub factor: f64,
    pub cap: f64,
}

impl Default for MeshPolicy {
    fn default() -> Self {
        MeshPolicy {
            density: 16.0,
            grade_ratio: 0.7,
            grade_levels: 12,
            grow: None,
        }
    }
}

impl MeshPolicy {
    pub fn with_density(density: f64) -> Self {
        MeshPolicy {
            density,
            ..Default::default()
        }
    }

    /// Default growing-tail policy for truncated star leads.
    pub fn with_growth(mut self) -> Self {
        self.grow = Some(GrowPolicy {
            uniform_span: 8.0,
            factor: 1.3,
            cap: 2.0,
        });
        self
    }
}

/// One quadrature node of the discretization.
#[derive(Clone, Debug)]
pub struct Node {
    pub edge: usize,
    pub s: f64,
    pub w: f64,
    pub point: [f64; 2],
    pub panel: usize,
}

#[derive(Clone, Copy, Debug)]
struct PanelDef {
    edge: usize,
    a: f64,
    b: f64,
}

/// Nyström discretization of αR^{iκ}_{m,m} at fixed κ.
pub struct BSDiscretization {
    pub kappa: f64,
    pub alpha: f64,
    pub nodes: Vec<Node>,
    /// Similarity-symmetrized matrix D^{1/2} A D^{−1/2}, then (B+Bᵀ)/2.
    pub matrix: SymMat,
    panels: Vec<PanelDef>,
}

/// One bound state −κ_j².
#[derive(Clone, Debug)]
pub struct BoundState {
    /// Branch index j (1-based): which eigenvalue curve μ_j crossed 1.
    pub j: usize,
    pub kappa: f64,
    pub energy: f64,
    /// Node densities φ(s_n) with Σ w φ² = 1.
    pub eigvec: Vec<f64>,
    /// |μ_j(κ_j) − 1| at the reported κ_j.
    pub residual: f64,
    /// True when the next branch crosses within the κ tolerance (exact or
    /// near degeneracy, e.g. symmetric stars). States are kept separate.
    pub degenerate_with_next: bool,
}

/// Output of [`find_bound_states`].
pub struct SpectralResult {
    pub states: Vec<BoundState>,
    /// Essential-spectrum bottom used as the energy ceiling: −α²/4 for
    /// graphs with truncated straight leads, 0 for compact Γ.
    pub threshold: f64,
}

// ---------------------------------------------------------------------------
// Mesh construction
// ---------------------------------------------------------------------------

fn build_panels(graph: &LeakyGraph, kappa: f64, mesh: &MeshPolicy) -> Vec<PanelDef> {
    let kref = graph.alpha.max(kappa);
    let width = 8.0 / (mesh.density * kref);
    let mut panels = Vec::new();
    for (e, curve) in graph.edges.iter().enumerate() {
        let l = curve.length();
        if curve.is_closed() {
            let n = ((l / width).ceil() as usize).max(4);
            let w = l / n as f64;
            for i in 0..n {
                panels.push(PanelDef {
                    edge: e,
                    a: i as f64 * w,
                    b: (i + 1) as f64 * w,
                });
            }
            continue;
        }
        // Open edge: split between refinement points, grade toward each.
        let mut marks: Vec<f64> = graph.refinement_points(e).to_vec();
        if marks.first().map_or(true, |&m| m > 1e-12 * l) {
            marks.insert(0, 0.0);
        }
        if marks.last().map_or(true, |&m| m < l * (1.0 - 1e-12)) {
            marks.push(l);
        }
        let n_iv = marks.len() - 1;
        for (iv, pair) in marks.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            let last = iv == n_iv - 1;
            let ivs: Vec<(f64, f64)> = match (mesh.grow, last) {
                (Some(g), true) => growing_partition(
                    a,
                    b,
                    width,
                    true,
                    mesh.grade_ratio,
                    mesh.grade_levels,
                    g.uniform_span / kref,
                    g.factor,
                    g.cap / kref,
                ),
                _ => graded_partition(
                    a,
                    b,
                    width,
                    true,
                    true,
                    mesh.grade_ratio,
                    mesh.grade_levels,
                ),
            };
            for (pa, pb) in ivs {
                panels.push(PanelDef { edge: e, a: pa, b: pb });
            }
        }
    }
    panels
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// Wrapped arc difference on a closed edge of period `l` (identity if open).
#[inline]
fn arc_diff(ds: f64, period: Option<f64>) -> f64 {
    match period {
        Some(l) => (ds + 0.5 * l).rem_euclid(l) - 0.5 * l,
        None => ds,
    }
}

/// Assemble the symmetrized Nyström matrix for (α/2π)K₀(κd) on the graph.
pub fn assemble(
    graph: &LeakyGraph,
    kappa: f64,
    mesh: &MeshPolicy,
) -> Result<BSDiscretization, BsError> {
    if kappa <= 0.0 {
        return Err(BsError::NonpositiveKappa(kappa));
    }
    if mesh.density < 8.0 {
        return Err(BsError::MeshTooCoarse(mesh.density));
    }
    let alpha = graph.alpha;
    let panels = build_panels(graph, kappa, mesh);

    // Nodes: 8 Gauss–Legendre points per panel, in panel order.
    let mut nodes = Vec::with_capacity(panels.len() * 8);
    for (pid, p) in panels.iter().enumerate() {
        let c = 0.5 * (p.a + p.b);
        let h = 0.5 * (p.b - p.a);
        for k in 0..8 {
            let s = c + h * GL8_X[k];
            nodes.push(Node {
                edge: p.edge,
                s,
                w: h * GL8_W[k],
                point: graph.edges[p.edge].point(s),
                panel: pid,
            });
        }
    }
    let n = nodes.len();

    // Distance matrix and the far-pair fill K₀(κd)·w_j.
    let mut a = SymMat::zeros(n);
    let mut dist = vec![0.0_f64; n * n];
    for i in 0..n {
        let pi = nodes[i].point;
        for j in 0..n {
            if i == j {
                continue;
            }
            let pj = nodes[j].point;
            let d = (pi[0] - pj[0]).hypot(pi[1] - pj[1]);
            dist[i * n + j] = d;
            a.set(i, j, greens::k0(kappa * d) * nodes[j].w);
        }
    }

    // Near pairs: product integration of the log factor, panel by panel.
    let ln_k2 = (0.5 * kappa).ln();
    for (pid, p) in panels.iter().enumerate() {
        let c = 0.5 * (p.a + p.b);
        let h = 0.5 * (p.b - p.a);
        let period = if graph.edges[p.edge].is_closed() {
            Some(graph.edges[p.edge].length())
        } else {
            None
        };
        let j0 = pid * 8; // first node of this panel (panel-ordered nodes)
        for i in 0..n {
            if nodes[i].edge != p.edge {
                continue;
            }
            let dsl = arc_diff(nodes[i].s - c, period);
            if dsl.abs() >= 3.0 * h {
                continue;
            }
            let t = dsl / h;
            let logw = log_weights(t);
            for idx in 0..8 {
                let j = j0 + idx;
                let lam = h * (h.ln() * GL8_W[idx] + logw[idx]);
                let entry = if i == j {
                    // Diagonal limit: I₀(0) = 1, R(s,s) = −ln(κ/2) − γ.
                    -lam + nodes[j].w * (-ln_k2 - EULER_GAMMA)
                } else {
                    let d = dist[i * n + j];
                    let z = kappa * d;
                    let dss = dsl - h * GL8_X[idx];
                    let i0z = greens::i0(z);
                    let r = greens::k0_log_companion(z)
                        - i0z * (ln_k2 + (d / dss.abs()).ln());
                    -i0z * lam + nodes[j].w * r
                };
                a.set(i, j, entry);
            }
        }
    }

    // Scale by α/2π and symmetrize via D^{1/2}·A·D^{−1/2}.
    let scale = alpha / (2.0 * std::f64::consts::PI);
    let sqw: Vec<f64> = nodes.iter().map(|nd| nd.w.sqrt()).collect();
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j) * scale * sqw[i] / sqw[j];
            a.set(i, j, v);
        }
    }
    a.symmetrize();

    Ok(BSDiscretization {
        kappa,
        alpha,
        nodes,
        matrix: a,
        panels,
    })
}

impl BSDiscretization {
    /// Total quadrature weight; equals |Γ| by construction.
    pub fn total_weight(&self) -> f64 {
        self.nodes.iter().map(|nd| nd.w).sum()
    }

    /// μ_j for j = 1..=jmax (descending). Uses Lanczos on large matrices when
    /// only the top of the spectrum is requested.
    pub fn top_eigenvalues(&self, jmax: usize) -> Vec<f64> {
        let n = self.matrix.n;
        if n > 600 && jmax == 1 {
            linalg::sym_lanczos_top(&self.matrix, 1, 1e-13)
        } else {
            linalg::sym_top_eigenvalues(&self.matrix, jmax.min(n))
        }
    }

    /// Top eigenpair: (μ₁, φ) with φ the node density, Σ w φ² = 1.
    pub fn top_eigenpair(&self) -> (f64, Vec<f64>) {
        let (mu, v) = if self.matrix.n > 600 {
            linalg::sym_lanczos_top_pair(&self.matrix, 1e-13)
        } else {
            linalg::sym_eigen_top_pair(&self.matrix)
        };
        (mu, self.to_density(&v))
    }

    /// Eigenpair of branch j (1-based) by dense solve; resolves multiplicity.
    pub fn eigenpair(&self, j: usize) -> Result<(f64, Vec<f64>), BsError> {
        let n = self.matrix.n;
        if j == 0 || j > n {
            return Err(BsError::IndexOutOfRange(j, n));
        }
        let (mu, v) = linalg::sym_eigen_pair_by_index(&self.matrix, n - j);
        Ok((mu, self.to_density(&v)))
    }

    /// Number of eigenvalues strictly above 1 (the discrete bound-state
    /// count at this κ).
    pub fn count_above_one(&self) -> usize {
        linalg::sym_count_above(&self.matrix, 1.0)
    }

    /// Convert a symmetric-matrix eigenvector to node densities φ = D^{−1/2}v.
    fn to_density(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .zip(self.nodes.iter())
            .map(|(vi, nd)| vi / nd.w.sqrt())
            .collect()
    }
}

/// μ_j(κ): the j-th largest (1-based) eigenvalue of the assembled BS matrix.
pub fn eigenvalue_curve(
    graph: &LeakyGraph,
    kappa: f64,
    j: usize,
    mesh: &MeshPolicy,
) -> Result<f64, BsError> {
    let disc = assemble(graph, kappa, mesh)?;
    let n = disc.matrix.n;
    if j == 0 || j > n {
        return Err(BsError::IndexOutOfRange(j, n));
    }
    Ok(disc.top_eigenvalues(j)[j - 1])
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Search floor for κ: just above α/2 for graphs with straight leads
/// (essential spectrum [−α²/4, ∞)), tiny for compact Γ.
fn kappa_floor(graph: &LeakyGraph) -> f64 {
    if graph.truncation.is_some() {
        0.5 * graph.alpha * (1.0 + 1e-6)
    } else {
        1e-3
    }
}

/// Find all bound states on branches j = 1..=j_max: for each j with
/// μ_j(κ_floor) > 1, bracket the crossing on a geometric grid, bisect to
/// width `tol`, then apply one secant polish.
pub fn find_bound_states(
    graph: &LeakyGraph,
    j_max: usize,
    tol: f64,
    mesh: &MeshPolicy,
) -> Result<SpectralResult, BsError> {
    if !(1e-10..=1e-4).contains(&tol) {
        return Err(BsError::BadTolerance(tol));
    }
    let threshold = if graph.truncation.is_some() {
        -graph.alpha * graph.alpha / 4.0
    } else {
        0.0
    };
    let k_lo = kappa_floor(graph);

    // μ values at the floor decide how many branches cross.
    let disc_lo = assemble(graph, k_lo, mesh)?;
    let n = disc_lo.matrix.n;
    let jm = j_max.min(n);
    let mu_lo_all = if jm == 1 {
        disc_lo.top_eigenvalues(1)
    } else {
        linalg::sym_top_eigenvalues(&disc_lo.matrix, jm)
    };
    if mu_lo_all[0] <= 1.0 {
        return Err(BsError::NoGroundState(mu_lo_all[0]));
    }

    let mu_at = |kappa: f64, j: usize| -> Result<f64, BsError> {
        let disc = assemble(graph, kappa, mesh)?;
        Ok(disc.top_eigenvalues(j)[j - 1])
    };

    let mut states = Vec::new();
    for j in 1..=jm {
        if mu_lo_all[j - 1] <= 1.0 {
            break; // μ_{j+1} ≤ μ_j: no further branch can cross
        }
        // Bracket: geometric growth until μ_j < 1.
        let (mut ka, mut mu_a) = (k_lo, mu_lo_all[j - 1]);
        let mut kb = ka;
        let mut mu_b = mu_a;
        let mut found = false;
        for _ in 0..120 {
            kb = kb * 1.6;
            mu_b = mu_at(kb, j)?;
            if mu_b < 1.0 {
                found = true;
                break;
            }
            ka = kb;
            mu_a = mu_b;
        }
        if !found {
            break;
        }
        // Bisection to κ width `tol`.
        while kb - ka > tol {
            let mid = 0.5 * (ka + kb);
            let mu_m = mu_at(mid, j)?;
            if mu_m >= 1.0 {
                ka = mid;
                mu_a = mu_m;
            } else {
                kb = mid;
                mu_b = mu_m;
            }
        }
        // One secant polish inside the bracket.
        let mut kappa_j = if (mu_a - mu_b).abs() > 1e-300 {
            ka + (mu_a - 1.0) * (kb - ka) / (mu_a - mu_b)
        } else {
            0.5 * (ka + kb)
        };
        kappa_j = kappa_j.clamp(ka, kb);

        // Final dense solve at κ_j: eigenvector, residual, degeneracy flag.
        let disc = assemble(graph, kappa_j, mesh)?;
        let (mu_j, phi, mu_next) = if j == 1 && disc.matrix.n > 600 && jm == 1 {
            let (mu, phi) = disc.top_eigenpair();
            (mu, phi, None)
        } else {
            let take = (j + 1).min(disc.matrix.n);
            let mus = linalg::sym_top_eigenvalues(&disc.matrix, take);
            let (_, phi) = disc.eigenpair(j)?;
            (mus[j - 1], phi, mus.get(j).copied())
        };
        // Degeneracy: does branch j+1 cross within tol of κ_j? Since
        // |μ′| ≈ |μ_j − μ_{j+1}|/Δκ locally, compare the eigenvalue gap
        // against the local slope times tol, estimated from the bracket.
        let slope = ((mu_a - mu_b) / (kb - ka).max(1e-300)).abs().max(1e-300);
        let degenerate = mu_next.is_some_and(|m| (mu_j - m).abs() < slope * tol);

        states.push(BoundState {
            j,
            kappa: kappa_j,
            energy: -kappa_j * kappa_j,
            eigvec: phi,
            residual: (mu_j - 1.0).abs(),
            degenerate_with_next: degenerate,
        });
    }
    // κ_j decreasing in j ⇒ energies −κ² increasing; enforce ordering in the
    // presence of root-finder noise on degenerate pairs.
    states.sort_by(|x, y| x.energy.partial_cmp(&y.energy).unwrap());
    Ok(SpectralResult { states, threshold })
}

// ---------------------------------------------------------------------------
// Eigenfunction evaluation
// ---------------------------------------------------------------------------

/// ψ(x) = α Σ_n G_κ(|x − γ(s_n)|)·φ_n·w_n for x off the curve.
///
/// `on_curve` lists the arc coordinates (edge, s) of x on every edge passing
/// through x (empty if x is off Γ); panels near those positions switch to the
/// subtracted-log product integration, which remains valid when x lies on a
/// node.
pub fn eigenfunction_eval(
    graph: &LeakyGraph,
    disc: &BSDiscretization,
    phi: &[f64],
    x: [f64; 2],
    on_curve: &[(usize, f64)],
) -> f64 {
    let kappa = disc.kappa;
    let ln_k2 = (0.5 * kappa).ln();
    let mut psi = 0.0;
    for (pid, p) in disc.panels.iter().enumerate() {
        let c = 0.5 * (p.a + p.b);
        let h = 0.5 * (p.b - p.a);
        let period = if graph.edges[p.edge].is_closed() {
            Some(graph.edges[p.edge].length())
        } else {
            None
        };
        // Does x sit on this panel's edge close to the panel? The product
        // integration stays valid (and strictly more accurate than plain
        // quadrature) out to several panel half-widths; 6 covers the graded
        // panels around a vertex target.
        let near = on_curve
            .iter()
            .filter(|(e, _)| *e == p.edge)
            .map(|(_, s)| arc_diff(s - c, period))
            .find(|ds| ds.abs() < 6.0 * h);
        let j0 = pid * 8;
        if let Some(dsl) = near {
            let t = dsl / h;
            let logw = log_weights(t);
            for idx in 0..8 {
                let nd = &disc.nodes[j0 + idx];
                let lam = h * (h.ln() * GL8_W[idx] + logw[idx]);
                let d = (x[0] - nd.point[0]).hypot(x[1] - nd.point[1]);
                let dss = dsl - h * GL8_X[idx];
                let z = kappa * d;
                let (i0z, r) = if d < 1e-14 {
                    (1.0, -ln_k2 - EULER_GAMMA)
                } else {
                    let i0z = greens::i0(z);
                    (
                        i0z,
                        greens::k0_log_companion(z) - i0z * (ln_k2 + (d / dss.abs()).ln()),
                    )
                };
                psi += (-i0z * lam + nd.w * r) * phi[j0 + idx];
            }
        } else {
            for idx in 0..8 {
                let nd = &disc.nodes[j0 + idx];
                let d = (x[0] - nd.point[0]).hypot(x[1] - nd.point[1]);
                psi += greens::k0(kappa * d) * nd.w * phi[j0 + idx];
            }
        }
    }
    psi * disc.alpha / (2.0 * std::f64::consts::PI)
}

/// L²(ℝ²) norm squared of ψ = α∫G_κ(·−γ(s))φ(s)ds via the closed-form
/// pairwise overlap r·K₁(κr)/(4πκ).
pub fn eigenfunction_norm2(disc: &BSDiscretization, phi: &[f64]) -> f64 {
    let n = disc.nodes.len();
    let kappa = disc.kappa;
    let mut acc = 0.0;
    for i in 0..n {
        let (pi, wi) = (disc.nodes[i].point, disc.nodes[i].w * phi[i]);
        // Diagonal term.
        acc += wi * wi * greens::resolvent_overlap2(kappa, 0.0);
        for j in (i + 1)..n {
            let pj = disc.nodes[j].point;
            let r = (pi[0] - pj[0]).hypot(pi[1] - pj[1]);
            let wj = disc.nodes[j].w * phi[j];
            acc += 2.0 * wi * wj * greens::resolvent_overlap2(kappa, r);
        }
    }
    acc * disc.alpha * disc.alpha
}

// ---------------------------------------------------------------------------
// Puncture (hiatus) perturbation
// ---------------------------------------------------------------------------

/// Ground-state energy of a star graph whose rays start at arc position
/// `eps` instead of 0 (a puncture of half-width ε at the vertex).
fn punctured_star_ground(
    star: &crate::geometry::StarConfig,
    alpha: f64,
    eps: f64,
    tol: f64,
    mesh: &MeshPolicy,
) -> Result<f64, BsError> {
    let t = star.edge_truncation;
    let edges = (0..star.n)
        .map(|j| {
            let th = star.theta(j).expect("ray index in range");
            crate::geometry::ArcCurve::segment(
                [eps * th.cos(), eps * th.sin()],
                [t * th.cos(), t * th.sin()],
            )
            .expect("nondegenerate ray")
        })
        .collect::<Vec<_>>();
    let graph = LeakyGraph::new(edges, alpha)
        .expect("punctured star is a valid graph")
        .with_truncation(t);
    let res = find_bound_states(&graph, 1, tol, mesh)?;
    Ok(res.states[0].energy)
}

/// Report from [`hiatus_slope`]: the finite-difference slope of E₁(ε) against
/// the spectral prediction 2α·s₁ with s₁ = |ψ(vertex)|²/‖ψ‖².
#[derive(Clone, Debug)]
pub struct HiatusReport {
    pub e0: f64,
    /// Least-squares slope of E₁(ε) over the supplied ε values.
    pub slope: f64,
    pub intercept: f64,
    /// s₁ = |ψ(γ(0))|² of the L²(ℝ²)-normalized ground state.
    pub s1: f64,
    /// slope / (2α·s₁): ≈ 1 when the first-order perturbation formula holds.
    pub ratio: f64,
}

/// Puncture a star graph at its vertex by removing the arc (−ε, ε) from the
/// node set, recompute E₁(ε), and compare the least-squares slope with the
/// prediction 2α·s₁.
pub fn hiatus_slope(
    star: &crate::geometry::StarConfig,
    alpha: f64,
    epsilons: &[f64],
    tol: f64,
    mesh: &MeshPolicy,
) -> Result<HiatusReport, BsError> {
    let total_len = star.n as f64 * star.edge_truncation;
    for &eps in epsilons {
        if eps > 0.05 * total_len {
            return Err(BsError::PunctureTooLarge(eps, total_len));
        }
    }
    // Unpunctured solve: energy, density, vertex value, L² norm.
    let graph = star.to_graph(alpha).expect("valid star graph");
    let res = find_bound_states(&graph, 1, tol, mesh)?;
    let e0 = res.states[0].energy;
    let kappa0 = res.states[0].kappa;
    let disc = assemble(&graph, kappa0, mesh)?;
    let (_, phi) = disc.top_eigenpair();
    // The vertex lies on every ray at arc position 0.
    let locs: Vec<(usize, f64)> = (0..star.n).map(|e| (e, 0.0)).collect();
    let psi0 = eigenfunction_eval(&graph, &disc, &phi, [0.0, 0.0], &locs);
    let norm2 = eigenfunction_norm2(&disc, &phi);
    let s1 = psi0 * psi0 / norm2;

    // Punctured energies and least-squares line E₁(ε) ≈ slope·ε + intercept.
    let mut es = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        es.push(punctured_star_ground(star, alpha, eps, tol, mesh)?);
    }
    let m = epsilons.len() as f64;
    let sx: f64 = epsilons.iter().sum();
    let sy: f64 = es.iter().sum();
    let sxx: f64 = epsilons.iter().map(|x| x * x).sum();
    let sxy: f64 = epsilons.iter().zip(es.iter()).map(|(x, y)| x * y).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let intercept = (sy - slope * sx) / m;
    let ratio = slope / (2.0 * alpha * s1);
    Ok(HiatusReport {
        e0,
        slope,
        intercept,
        s1,
        ratio,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ArcCurve;

    fn circle_graph(l: f64, alpha: f64) -> LeakyGraph {
        LeakyGraph::loop_graph(ArcCurve::circle_of_length(l).unwrap(), alpha).unwrap()
    }

    #[test]
    fn weights_sum_to_total_length_and_matrix_is_symmetric() {
        let g = circle_graph(1.0, 5.0);
        let disc = assemble(&g, 2.0, &MeshPolicy::default()).unwrap();
        assert!((disc.total_weight() - 1.0).abs() < 1e-10, "Σw ≠ |Γ|");
        assert!(disc.matrix.asymmetry() == 0.0, "not symmetrized");
        for i in 0..disc.matrix.n {
            for j in 0..disc.matrix.n {
                assert!(disc.matrix.get(i, j).is_finite());
            }
        }
    }

    #[test]
    fn straight_segment_entry_matches_kernel_formula() {
        // Far pairs on a straight segment must be exactly (α/2π)K₀(κ|s−s′|)·w
        // after undoing the symmetrization.
        let g = LeakyGraph::new(
            vec![ArcCurve::segment([0.0, 0.0], [4.0, 0.0]).unwrap()],
            3.0,
        )
        .unwrap();
        let kappa = 1.7;
        let disc = assemble(&g, kappa, &MeshPolicy::default()).unwrap();
        let (i, j) = (10, disc.nodes.len() - 10);
        let (ni, nj) = (&disc.nodes[i], &disc.nodes[j]);
        let want = 3.0 / (2.0 * std::f64::consts::PI)
            * greens::k0(kappa * (ni.s - nj.s).abs())
            * (ni.w * nj.w).sqrt();
        let got = disc.matrix.get(i, j);
        assert!(
            (got - want).abs() < 1e-12 * want.abs(),
            "entry {got} vs kernel {want}"
        );
    }

    #[test]
    fn circle_ground_state_matches_exact_secular_equation() {
        // Exact closed form on a circle of radius R: the ground κ solves
        // αR·I₀(κR)K₀(κR) = 1; reference root computed independently.
        // For α = 5, L = 1: κ = 2.2361499673784009872.
        let g = circle_graph(1.0, 5.0);
        let res = find_bound_states(&g, 1, 1e-9, &MeshPolicy::default()).unwrap();
        assert_eq!(res.states.len(), 1);
        let want = 2.236_149_967_378_401;
        let got = res.states[0].kappa;
        assert!(
            (got - want).abs() < 2e-7,
            "circle ground κ: got {got}, want {want}"
        );
        assert!(res.states[0].residual < 1e-6);
        assert_eq!(res.threshold, 0.0);
    }

    #[test]
    fn mu_decreasing_in_kappa_and_vanishing_at_infinity() {
        let g = circle_graph(1.0, 5.0);
        let mesh = MeshPolicy::default();
        let mut prev = f64::INFINITY;
        for &k in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let mu = eigenvalue_curve(&g, k, 1, &mesh).unwrap();
            assert!(mu < prev, "μ₁ not decreasing at κ={k}");
            prev = mu;
        }
        assert!(eigenvalue_curve(&g, 60.0, 1, &mesh).unwrap() < 0.05);
    }

    #[test]
    fn bent_curve_beats_straight_segment() {
        // Equal length, equal κ: bending pushes μ₁ up.
        let straight = LeakyGraph::new(
            vec![ArcCurve::segment([0.0, 0.0], [2.0, 0.0]).unwrap()],
            2.0,
        )
        .unwrap();
        let bent = LeakyGraph::new(
            vec![ArcCurve::polyline(&[[0.0, 0.0], [1.0, 0.0], [1.0 + 0.5f64.sqrt(), 0.5f64.sqrt()]]).unwrap()],
            2.0,
        )
        .unwrap();
        let mesh = MeshPolicy::default();
        let mu_s = eigenvalue_curve(&straight, 1.0, 1, &mesh).unwrap();
        let mu_b = eigenvalue_curve(&bent, 1.0, 1, &mesh).unwrap();
        assert!(
            mu_b > mu_s,
            "bent μ₁ = {mu_b} not above straight μ₁ = {mu_s}"
        );
    }

    #[test]
    fn matrix_positive_semidefinite() {
        let g = circle_graph(1.0, 3.0);
        let disc = assemble(&g, 1.5, &MeshPolicy::default()).unwrap();
        let evs = linalg::sym_eigenvalues(&disc.matrix);
        let top = evs.last().unwrap();
        assert!(
            evs[0] > -1e-10 * top,
            "smallest eigenvalue {} too negative",
            evs[0]
        );
    }

    #[test]
    fn ground_state_density_is_sign_definite() {
        let g = circle_graph(1.0, 5.0);
        let res = find_bound_states(&g, 1, 1e-8, &MeshPolicy::default()).unwrap();
        let phi = &res.states[0].eigvec;
        let all_pos = phi.iter().all(|&x| x > 0.0);
        let all_neg = phi.iter().all(|&x| x < 0.0);
        assert!(all_pos || all_neg, "ground density changes sign");
    }

    #[test]
    fn eigenfunction_on_curve_reproduces_density_at_mu_one() {
        // At the eigen-κ, ψ restricted to Γ equals φ (the BS fixed point).
        let g = circle_graph(1.0, 5.0);
        let res = find_bound_states(&g, 1, 1e-9, &MeshPolicy::default()).unwrap();
        let disc = assemble(&g, res.states[0].kappa, &MeshPolicy::default()).unwrap();
        let (_, phi) = disc.top_eigenpair();
        for &i in &[3usize, 57, 101] {
            let nd = &disc.nodes[i.min(disc.nodes.len() - 1)];
            let psi = eigenfunction_eval(&g, &disc, &phi, nd.point, &[(nd.edge, nd.s)]);
            assert!(
                (psi - phi[i.min(phi.len() - 1)]).abs() < 2e-4 * phi[0].abs().max(1.0),
                "ψ(γ(s)) = {psi} vs φ = {}",
                phi[i.min(phi.len() - 1)]
            );
        }
    }

    #[test]
    fn far_field_decay_rate_matches_kappa() {
        let g = circle_graph(1.0, 5.0);
        let res = find_bound_states(&g, 1, 1e-9, &MeshPolicy::default()).unwrap();
        let kappa = res.states[0].kappa;
        let disc = assemble(&g, kappa, &MeshPolicy::default()).unwrap();
        let (_, phi) = disc.top_eigenpair();
        // Log-derivative along a ray at |x| ≫ diam Γ.
        let (r1, r2) = (6.0, 6.5);
        let p1 = eigenfunction_eval(&g, &disc, &phi, [r1, 0.0], &[]);
        let p2 = eigenfunction_eval(&g, &disc, &phi, [r2, 0.0], &[]);
        let rate = -(p2 / p1).ln() / (r2 - r1);
        // K₀ carries a −1/(2r) algebraic correction to the pure e^{−κr} decay.
        let want = kappa + 0.5 / (0.5 * (r1 + r2));
        assert!(
            (rate - want).abs() < 0.05 * kappa,
            "far-field rate {rate} vs κ-corrected {want}"
        );
    }

    #[test]
    fn mesh_errors_reported() {
        let g = circle_graph(1.0, 5.0);
        assert!(matches!(
            assemble(&g, -1.0, &MeshPolicy::default()),
            Err(BsError::NonpositiveKappa(_))
        ));
        assert!(matches!(
            assemble(&g, 1.0, &MeshPolicy::with_density(4.0)),
            Err(BsError::MeshTooCoarse(_))
        ));
        assert!(matches!(
            find_bound_states(&g, 1, 1e-3, &MeshPolicy::default()),
            Err(BsError::BadTolerance(_))
        ));
    }
}
