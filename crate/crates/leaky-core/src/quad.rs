//! Panel-based Gauss–Legendre quadrature and product integration for
//! logarithmic kernels.
//!
//! The Birman–Schwinger kernel (α/2π)K₀(κ|γ(s)−γ(s′)|) is smooth away from
//! the diagonal but has a −ln|s−s′| singularity on it. Plain quadrature of a
//! log kernel loses two or more digits; instead, near-diagonal panels use
//! *product integration*: on a panel with nodes x_j, weights λ_j(t) are
//! constructed so that
//!
//!   Σ_j λ_j(t)·p(x_j) = ∫_{−1}^{1} p(u)·ln|u−t| du
//!
//! holds exactly for every polynomial p of degree < 8. The λ are obtained
//! from the log moments M_q(t) = ∫ u^q ln|u−t| du (closed form below) and the
//! inverse of the 8×8 Vandermonde matrix on the Gauss–Legendre nodes.
//!
//! Mesh grading: panels adjacent to a graph vertex are subdivided
//! geometrically (default ratio 0.7, 12 levels) because cross-edge kernel
//! blocks K₀(κ·d_ij(s,s′)) are log-singular at the corner s = s′ = 0.

/// 8-point Gauss–Legendre nodes on [−1, 1].
pub const GL8_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_78,
    0.183_434_642_495_649_78,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];

/// 8-point Gauss–Legendre weights on [−1, 1].
pub const GL8_W: [f64; 8] = [
    0.101_228_536_290_376_69,
    0.222_381_034_453_374_34,
    0.313_706_645_877_887_05,
    0.362_683_783_378_361_77,
    0.362_683_783_378_361_77,
    0.313_706_645_877_887_05,
    0.222_381_034_453_374_34,
    0.101_228_536_290_376_69,
];

/// 16-point Gauss–Legendre nodes on [−1, 1].
pub const GL16_X: [f64; 16] = [
    -0.989_400_934_991_649_9,
    -0.944_575_023_073_232_6,
    -0.865_631_202_387_831_8,
    -0.755_404_408_355_003,
    -0.617_876_244_402_643_8,
    -0.458_016_777_657_227_37,
    -0.281_603_550_779_258_9,
    -0.095_012_509_837_637_45,
    0.095_012_509_837_637_45,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_37,
    0.617_876_244_402_643_8,
    0.755_404_408_355_003,
    0.865_631_202_387_831_8,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];

/// 16-point Gauss–Legendre weights on [−1, 1].
pub const GL16_W: [f64; 16] = [
    0.027_152_459_411_754_037,
    0.062_253_523_938_647_706,
    0.095_158_511_682_492_59,
    0.124_628_971_255_534_03,
    0.149_595_988_816_576_76,
    0.169_156_519_395_002_62,
    0.182_603_415_044_923_6,
    0.189_450_610_455_068_59,
    0.189_450_610_455_068_59,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_62,
    0.149_595_988_816_576_76,
    0.124_628_971_255_534_03,
    0.095_158_511_682_492_59,
    0.062_253_523_938_647_706,
    0.027_152_459_411_754_037,
];

/// ∫_a^b f(u) du by a single 8-point Gauss–Legendre rule.
pub fn gl8<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL8_X.iter().zip(GL8_W.iter()) {
        acc += w * f(c + h * x);
    }
    h * acc
}

/// ∫_a^b f(u) du by a single 16-point Gauss–Legendre rule.
pub fn gl16<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL16_X.iter().zip(GL16_W.iter()) {
        acc += w * f(c + h * x);
    }
    h * acc
}

/// ∫_a^b f(u) du by n equal 16-point panels.
pub fn gl16_composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, n: usize) -> f64 {
    let step = (b - a) / n as f64;
    (0..n)
        .map(|i| gl16(&mut f, a + i as f64 * step, a + (i + 1) as f64 * step))
        .sum()
}

/// ∫_a^b f(u) du by adaptive panel bisection.
///
/// Each panel is integrated with both the 8- and 16-point Gauss–Legendre
/// rules; if the two disagree by more than the panel's length-proportional
/// share of `tol` (absolute), the panel is halved. Panels narrower than
/// 2⁻⁴⁸·(b−a) are accepted as-is so the recursion always terminates, even for
/// integrands with near-singular peaks (e.g. 1/(τ(2τ−α)) just above a
/// threshold).
pub fn adaptive_quad<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    assert!(tol > 0.0, "adaptive_quad: tolerance must be positive");
    if a == b {
        return 0.0;
    }
    let span = (b - a).abs();
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    let mut processed = 0usize;
    while let Some((pa, pb, depth)) = stack.pop() {
        processed += 1;
        let coarse = gl8(&mut f, pa, pb);
        let fine = gl16(&mut f, pa, pb);
        let budget = tol * ((pb - pa).abs() / span).max(f64::EPSILON);
        // Roundoff floor: once the rule difference is at the rounding level of
        // the panel integral itself, splitting further cannot help.
        let floor = 32.0 * f64::EPSILON * fine.abs();
        if (fine - coarse).abs() <= budget.max(floor) || depth >= 48 || processed > 1_000_000 {
            total += fine;
        } else {
            let mid = 0.5 * (pa + pb);
            stack.push((pa, mid, depth + 1));
            stack.push((mid, pb, depth + 1));
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Log moments and product-integration weights
// ---------------------------------------------------------------------------

/// Antiderivative building block F_m(v) = v^{m+1}(ln|v| − 1/(m+1))/(m+1),
/// so that d/dv F_m = v^m ln|v|; F_m(0) = 0 by continuity.
fn log_antideriv(m: usize, v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let m1 = (m + 1) as f64;
    v.powi(m as i32 + 1) * (v.abs().ln() - 1.0 / m1) / m1
}

/// Log moments M_q(t) = ∫_{−1}^{1} u^q ln|u−t| du for q = 0..7.
///
/// Expanded around the singular point: with v = u − t,
/// M_q(t) = Σ_m C(q,m)·t^{q−m}·[F_m(1−t) − F_m(−1−t)].
/// Valid for any real t (inside or outside the panel).
pub fn log_moments(t: f64) -> [f64; 8] {
    // Pascal-triangle binomials up to row 7.
    const BINOM: [[f64; 8]; 8] = [
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 5.0, 10.0, 10.0, 5.0, 1.0, 0.0, 0.0],
        [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0, 0.0],
        [1.0, 7.0, 21.0, 35.0, 35.0, 21.0, 7.0, 1.0],
    ];
    let mut fdiff = [0.0_f64; 8];
    for (m, slot) in fdiff.iter_mut().enumerate() {
        *slot = log_antideriv(m, 1.0 - t) - log_antideriv(m, -1.0 - t);
    }
    let mut m_out = [0.0_f64; 8];
    for q in 0..8 {
        let mut acc = 0.0;
        for m in 0..=q {
            acc += BINOM[q][m] * t.powi((q - m) as i32) * fdiff[m];
        }
        m_out[q] = acc;
    }
    m_out
}

/// Inverse of the Vandermonde matrix V_{ij} = x_i^j on the GL8 nodes,
/// computed once by Gaussian elimination with partial pivoting.
fn vandermonde_inverse() -> &'static [[f64; 8]; 8] {
    use std::sync::OnceLock;
    static VINV: OnceLock<[[f64; 8]; 8]> = OnceLock::new();
    VINV.get_or_init(|| {
        let mut a = [[0.0_f64; 16]; 8]; // augmented [V | I]
        for i in 0..8 {
            for j in 0..8 {
                a[i][j] = GL8_X[i].powi(j as i32);
            }
            a[i][8 + i] = 1.0;
        }
        for col in 0..8 {
            let piv = (col..8)
                .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
                .unwrap();
            a.swap(col, piv);
            let d = a[col][col];
            for v in a[col].iter_mut() {
                *v /= d;
            }
            for row in 0..8 {
                if row != col {
                    let f = a[row][col];
                    for j in 0..16 {
                        a[row][j] -= f * a[col][j];
                    }
                }
            }
        }
        let mut inv = [[0.0_f64; 8]; 8];
        for i in 0..8 {
            inv[i].copy_from_slice(&a[i][8..]);
        }
        inv
    })
}

/// Product-integration weights λ_j(t) on the GL8 nodes:
/// Σ_j λ_j(t)·f(x_j) ≈ ∫_{−1}^{1} f(u)·ln|u−t| du, exact for polynomials of
/// degree < 8. λ = (V⁻¹)ᵀ·M(t).
pub fn log_weights(t: f64) -> [f64; 8] {
    let vinv = vandermonde_inverse();
    let m = log_moments(t);
    let mut lam = [0.0_f64; 8];
    for (j, slot) in lam.iter_mut().enumerate() {
        let mut acc = 0.0;
        for q in 0..8 {
            acc += vinv[q][j] * m[q];
        }
        *slot = acc;
    }
    lam
}

// ---------------------------------------------------------------------------
// Panel partitions
// ---------------------------------------------------------------------------

/// Split [a, b] into panels of width ≤ `width`, optionally grading toward
/// one or both endpoints: the endpoint-adjacent panel is replaced by a
/// geometric stack of `levels` subpanels with the given `ratio`, so the
/// finest panel at the endpoint has width ~ width·ratio^levels.
///
/// Returns panel intervals in increasing order, covering [a, b] exactly.
pub fn graded_partition(
    a: f64,
    b: f64,
    width: f64,
    grade_a: bool,
    grade_b: bool,
    ratio: f64,
    levels: usize,
) -> Vec<(f64, f64)> {
    assert!(b > a, "graded_partition: empty interval [{a}, {b}]");
    assert!(width > 0.0 && ratio > 0.0 && ratio < 1.0);
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let w = (b - a) / n as f64;
    let mut panels = Vec::with_capacity(n + 2 * levels);
    for i in 0..n {
        let (pa, pb) = (a + i as f64 * w, a + (i + 1) as f64 * w);
        let at_a = i == 0 && grade_a && n >= 1;
        let at_b = i == n - 1 && grade_b;
        if at_a && !(at_b) {
            // Geometric stack accumulating toward pa.
            let mut edges = vec![pb];
            let mut frac = 1.0;
            for _ in 0..levels {
                frac *= ratio;
                edges.push(pa + frac * (pb - pa));
            }
            edges.push(pa);
            edges.reverse();
            for pair in edges.windows(2) {
                panels.push((pair[0], pair[1]));
            }
        } else if at_b && !at_a {
            let mut edges = vec![pa];
            let mut frac = 1.0;
            for _ in 0..levels {
                frac *= ratio;
                edges.push(pb - frac * (pb - pa));
            }
            edges.push(pb);
            for pair in edges.windows(2) {
                panels.push((pair[0], pair[1]));
            }
        } else if at_a && at_b {
            // Single panel graded on both ends: split at the midpoint.
            let mid = 0.5 * (pa + pb);
            for (x0, x1) in graded_partition(pa, mid, width, true, false, ratio, levels) {
                panels.push((x0, x1));
            }
            for (x0, x1) in graded_partition(mid, pb, width, false, true, ratio, levels) {
                panels.push((x0, x1));
            }
        } else {
            panels.push((pa, pb));
        }
    }
    panels
}

/// Like [`graded_partition`] with outward growth: beyond `grow_from` measured
/// from `a`, panel widths grow by `factor` per panel, capped at `cap`. Used
/// for very shallow star-graph states whose tails require long truncations
/// that a uniform mesh would make needlessly expensive.
pub fn growing_partition(
    a: f64,
    b: f64,
    width: f64,
    grade_a: bool,
    ratio: f64,
    levels: usize,
    grow_from: f64,
    factor: f64,
    cap: f64,
) -> Vec<(f64, f64)> {
    assert!(b > a && width > 0.0 && factor > 1.0 && cap >= width);
    let inner_end = (a + grow_from).min(b);
    let mut panels = graded_partition(a, inner_end, width, grade_a, false, ratio, levels);
    let mut lo = inner_end;
    let mut w = width;
    while lo < b - 1e-12 * (b - a) {
        w = (w * factor).min(cap);
        let hi = (lo + w).min(b);
        panels.push((lo, hi));
        lo = hi;
    }
    panels
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
