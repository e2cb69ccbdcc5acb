//! Dense symmetric eigensolver: Householder tridiagonalization, Sturm-sequence
//! bisection for selected eigenvalues, and inverse iteration for eigenvectors.
//!
//! The spectral pipelines only ever need a few eigenvalues at a time — the top
//! of the Birman–Schwinger spectrum, the bottom of a Krein or comparison
//! matrix — but they need them for matrices that are dense, symmetric, and
//! rebuilt at every κ of a root search. Bisection on the tridiagonal form
//! costs O(n) per probe, so "k eigenvalues to 1e−14" is far cheaper than a
//! full QL sweep, and the Sturm count doubles as the bound-state counter.
//!
//! Complex Hermitian problems (Floquet/flux boundary conditions in the
//! comparison module) are handled by their callers through the real doubling
//! H = A + iB ↦ [[A, −B], [B, A]], which is symmetric when H is Hermitian and
//! carries each eigenvalue twice.

/// Dense symmetric matrix, row-major full storage.
#[derive(Clone, Debug)]
pub struct SymMat {
    pub n: usize,
    data: Vec<f64>,
}

impl SymMat {
    pub fn zeros(n: usize) -> Self {
        SymMat {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    /// Replace the matrix by (A + Aᵀ)/2.
    pub fn symmetrize(&mut self) {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let m = 0.5 * (self.get(i, j) + self.get(j, i));
                self.set(i, j, m);
                self.set(j, i, m);
            }
        }
    }

    /// Largest |Aᵢⱼ − Aⱼᵢ|, for symmetry diagnostics.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// y = A·x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.iter())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Householder tridiagonalization
// ---------------------------------------------------------------------------

/// Symmetric tridiagonal matrix: diagonal `d` (length n) and subdiagonal `e`
/// (length n−1).
#[derive(Clone, Debug)]
pub struct Tridiag {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

/// Tridiagonalized matrix with the Householder reflectors retained for
/// eigenvector back-transformation.
pub struct Reduction {
    pub tri: Tridiag,
    /// Reflector k (k = 0..n−2) acts on indices k+1..n; stored with its
    /// scaling β so that H = I − β v vᵀ.
    reflectors: Vec<(Vec<f64>, f64)>,
}

/// Reduce a symmetric matrix to tridiagonal form, T = Qᵀ A Q, destroying `a`.
pub fn tridiagonalize(mut a: SymMat) -> Reduction {
    let n = a.n;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![0.0; n];
    let mut w = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        d[k] = a.get(k, k);
        // x = tail of row k (equals column k below the diagonal by symmetry).
        let mut v: Vec<f64> = a.row(k)[k + 1..].to_vec();
        let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm == 0.0 {
            e[k] = 0.0;
            reflectors.push((v, 0.0));
            continue;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        e[k] = -sign * norm;
        v[0] += sign * norm;
        let beta = 2.0 / v.iter().map(|t| t * t).sum::<f64>();

        // p = β·A₂₂·v on the trailing block, then w = p − (β/2)(vᵀp)v.
        let m = n - k - 1;
        for i in 0..m {
            let row = &a.row(k + 1 + i)[k + 1..];
            let mut acc = 0.0;
            for j in 0..m {
                acc += row[j] * v[j];
            }
            p[i] = beta * acc;
        }
        let vtp: f64 = (0..m).map(|i| v[i] * p[i]).sum();
        let half = 0.5 * beta * vtp;
        for i in 0..m {
            w[i] = p[i] - half * v[i];
        }
        // A₂₂ ← A₂₂ − v wᵀ − w vᵀ.
        for i in 0..m {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a.row_mut(k + 1 + i)[k + 1..];
            for j in 0..m {
                row[j] -= vi * w[j] + wi * v[j];
            }
        }
        reflectors.push((v, beta));
    }
    if n >= 2 {
        d[n - 2] = a.get(n - 2, n - 2);
        e[n - 2] = a.get(n - 2, n - 1);
    }
    if n >= 1 {
        d[n - 1] = a.get(n - 1, n - 1);
    }
    Reduction {
        tri: Tridiag { d, e },
        reflectors,
    }
}

impl Reduction {
    /// Back-transform a tridiagonal eigenvector: x ↦ Q·x.
    pub fn apply_q(&self, x: &mut [f64]) {
        let n = self.tri.d.len();
        for k in (0..self.reflectors.len()).rev() {
            let (v, beta) = &self.reflectors[k];
            if *beta == 0.0 {
                continue;
            }
            let m = v.len();
            let mut dot = 0.0;
            for i in 0..m {
                dot += v[i] * x[k + 1 + i];
            }
            let s = beta * dot;
            for i in 0..m {
                x[k + 1 + i] -= s * v[i];
            }
        }
        debug_assert_eq!(n, x.len());
    }
}

// ---------------------------------------------------------------------------
// Sturm bisection
// ---------------------------------------------------------------------------

/// Number of eigenvalues of T strictly below x (Sturm sequence via the LDLᵀ
/// recurrence, with the customary underflow guard).
pub fn sturm_count(t: &Tridiag, x: f64) -> usize {
    let n = t.d.len();
    let mut count = 0;
    let mut q = 1.0_f64;
    for i in 0..n {
        let e2 = if i == 0 { 0.0 } else { t.e[i - 1] * t.e[i - 1] };
        q = t.d[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = 1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin bounds (lo, hi) containing all eigenvalues of T.
fn gershgorin(t: &Tridiag) -> (f64, f64) {
    let n = t.d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { t.e[i - 1].abs() } else { 0.0 }
            + if i + 1 < n { t.e[i].abs() } else { 0.0 };
        lo = lo.min(t.d[i] - r);
        hi = hi.max(t.d[i] + r);
    }
    (lo, hi)
}

/// The eigenvalue of T with ascending index `idx` (0-based), by bisection on
/// the Sturm count to about machine precision.
pub fn tridiag_eigenvalue(t: &Tridiag, idx: usize) -> f64 {
    let n = t.d.len();
    assert!(idx < n, "eigenvalue index {idx} out of range (n = {n})");
    let (mut lo, mut hi) = gershgorin(t);
    let scale = hi.abs().max(lo.abs()).max(1e-300);
    while hi - lo > 4.0 * f64::EPSILON * scale {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if sturm_count(t, mid) > idx {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Inverse iteration
// ---------------------------------------------------------------------------

/// Solve (T − λI)·y = rhs by Gaussian elimination with partial pivoting on
/// the three bands (fill-in limited to a second superdiagonal).
fn tridiag_solve_shifted(t: &Tridiag, lambda: f64, rhs: &[f64]) -> Vec<f64> {
    let n = t.d.len();
    let mut a = vec![0.0; n]; // subdiagonal (row i, col i−1)
    let mut b: Vec<f64> = (0..n).map(|i| t.d[i] - lambda).collect();
    let mut c = vec![0.0; n]; // superdiagonal
    let mut f = vec![0.0; n]; // second superdiagonal (fill-in)
    for i in 0..n - 1 {
        a[i + 1] = t.e[i];
        c[i] = t.e[i];
    }
    let mut y = rhs.to_vec();
    for i in 0..n - 1 {
        if a[i + 1].abs() > b[i].abs() {
            // Swap rows i and i+1, column by column: col i is (b[i], a[i+1]),
            // col i+1 is (c[i], b[i+1]), col i+2 is (f[i]=0, c[i+1]).
            std::mem::swap(&mut b[i], &mut a[i + 1]);
            std::mem::swap(&mut c[i], &mut b[i + 1]);
            if i + 2 < n {
                f[i] = c[i + 1];
                c[i + 1] = 0.0;
            }
            y.swap(i, i + 1);
        }
        let piv = if b[i] != 0.0 { b[i] } else { 1e-300 };
        let m = a[i + 1] / piv;
        b[i + 1] -= m * c[i];
        if i + 2 < n {
            c[i + 1] -= m * f[i];
        }
        y[i + 1] -= m * y[i];
        a[i + 1] = 0.0;
    }
    // Back substitution.
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = y[i];
        if i + 1 < n {
            acc -= c[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= f[i] * x[i + 2];
        }
        let piv = if b[i] != 0.0 { b[i] } else { 1e-300 };
        x[i] = acc / piv;
    }
    x
}

/// Eigenvector of T for an eigenvalue λ (from [`tridiag_eigenvalue`]), by
/// inverse iteration from a deterministic pseudo-random start.
pub fn tridiag_eigenvector(t: &Tridiag, lambda: f64) -> Vec<f64> {
    let n = t.d.len();
    // Small deterministic LCG start vector: robust against accidental
    // orthogonality to the target eigenvector.
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        })
        .collect();
    // Shift λ by a hair so (T − λI) is merely ill-conditioned, not singular.
    let scale = t.d.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    let shifted = lambda + 1e-14 * scale;
    for _ in 0..3 {
        let y = tridiag_solve_shifted(t, shifted, &x);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (xi, yi) in x.iter_mut().zip(y.iter()) {
            *xi = yi / norm;
        }
    }
    x
}

// ---------------------------------------------------------------------------
// High-level symmetric eigen API
// ---------------------------------------------------------------------------

/// The k largest eigenvalues, descending.
pub fn sym_top_eigenvalues(a: &SymMat, k: usize) -> Vec<f64> {
    let n = a.n;
    let red = tridiagonalize(a.clone());
    (0..k.min(n))
        .map(|j| tridiag_eigenvalue(&red.tri, n - 1 - j))
        .collect()
}

/// All eigenvalues, ascending.
pub fn sym_eigenvalues(a: &SymMat) -> Vec<f64> {
    let n = a.n;
    let red = tridiagonalize(a.clone());
    (0..n).map(|j| tridiag_eigenvalue(&red.tri, j)).collect()
}

/// Number of eigenvalues strictly above `x` (Sturm count on the reduction).
pub fn sym_count_above(a: &SymMat, x: f64) -> usize {
    let red = tridiagonalize(a.clone());
    a.n - sturm_count(&red.tri, x.next_up())
}

/// Largest eigenvalue with its (unit) eigenvector.
pub fn sym_eigen_top_pair(a: &SymMat) -> (f64, Vec<f64>) {
    sym_eigen_pair_by_index(a, a.n - 1)
}

/// Smallest eigenvalue with its (unit) eigenvector.
pub fn sym_eigen_smallest_pair(a: &SymMat) -> (f64, Vec<f64>) {
    sym_eigen_pair_by_index(a, 0)
}

/// Eigenvalue by ascending index, without the eigenvector.
pub fn sym_eigenvalue_by_index(a: &SymMat, idx: usize) -> f64 {
    let red = tridiagonalize(a.clone());
    tridiag_eigenvalue(&red.tri, idx)
}

/// Eigenpair by ascending eigenvalue index.
pub fn sym_eigen_pair_by_index(a: &SymMat, idx: usize) -> (f64, Vec<f64>) {
    let red = tridiagonalize(a.clone());
    let lambda = tridiag_eigenvalue(&red.tri, idx);
    let mut v = tridiag_eigenvector(&red.tri, lambda);
    red.apply_q(&mut v);
    // One Rayleigh-quotient pass in the original matrix tightens λ.
    let av = a.matvec(&v);
    let rq: f64 = v.iter().zip(av.iter()).map(|(x, y)| x * y).sum();
    (rq, v)
}

// ---------------------------------------------------------------------------
// Lanczos for a few extreme eigenvalues of large matrices
// ---------------------------------------------------------------------------

fn lcg_unit_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut state = seed;
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        })
        .collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

/// Lanczos recurrence with full reorthogonalization; returns (basis, d, e).
fn lanczos_basis(a: &SymMat, want: usize, tol: f64) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
    let n = a.n;
    let max_iter = n.min(500);
    let scale_est = (0..n).map(|i| a.get(i, i).abs()).fold(1e-300, f64::max);
    let mut basis: Vec<Vec<f64>> = vec![lcg_unit_vector(n, 0x5eed_1234_abcd_0001)];
    let mut d: Vec<f64> = Vec::new();
    let mut e: Vec<f64> = Vec::new();
    let mut prev_top: Vec<f64> = Vec::new();
    let mut seed_bump = 1u64;
    while d.len() < max_iter {
        let m = d.len();
        let q = &basis[m];
        let mut w = a.matvec(q);
        if m > 0 {
            let beta = e[m - 1];
            for (wi, qi) in w.iter_mut().zip(basis[m - 1].iter()) {
                *wi -= beta * qi;
            }
        }
        let alpha: f64 = q.iter().zip(w.iter()).map(|(x, y)| x * y).sum();
        for (wi, qi) in w.iter_mut().zip(q.iter()) {
            *wi -= alpha * qi;
        }
        d.push(alpha);
        // Full reorthogonalization, two passes.
        for _ in 0..2 {
            for b in basis.iter() {
                let c: f64 = b.iter().zip(w.iter()).map(|(x, y)| x * y).sum();
                for (wi, bi) in w.iter_mut().zip(b.iter()) {
                    *wi -= c * bi;
                }
            }
        }
        let beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if d.len() == max_iter {
            break;
        }
        if beta < 1e-13 * scale_est.max(1.0) {
            // Invariant subspace exhausted. If we already span enough for the
            // requested eigenvalues, stop; otherwise restart a fresh direction.
            if d.len() >= want.max(2) {
                break;
            }
            let mut fresh = lcg_unit_vector(n, 0x5eed_1234_abcd_0001 + seed_bump);
            seed_bump += 1;
            for b in basis.iter() {
                let c: f64 = b.iter().zip(fresh.iter()).map(|(x, y)| x * y).sum();
                for (fi, bi) in fresh.iter_mut().zip(b.iter()) {
                    *fi -= c * bi;
                }
            }
            let norm = fresh.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                break;
            }
            for x in fresh.iter_mut() {
                *x /= norm;
            }
            e.push(0.0);
            basis.push(fresh);
            continue;
        }
        e.push(beta);
        basis.push(w.iter().map(|x| x / beta).collect());
        // Convergence of the top `want` Ritz values.
        let m_now = d.len();
        if m_now >= want + 2 && m_now % 4 == 0 {
            let tri = Tridiag {
                d: d.clone(),
                e: e[..m_now - 1].to_vec(),
            };
            let top: Vec<f64> = (0..want.min(m_now))
                .map(|j| tridiag_eigenvalue(&tri, m_now - 1 - j))
                .collect();
            if prev_top.len() == top.len() {
                let change = top
                    .iter()
                    .zip(prev_top.iter())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max);
                if change < tol * scale_est.max(1.0) {
                    break;
                }
            }
            prev_top = top;
        }
    }
    let m = d.len();
    e.truncate(m.saturating_sub(1));
    (basis, d, e)
}

/// The k largest eigenvalues (descending) by Lanczos iteration with full
/// reorthogonalization — intended for k ≪ n where full tridiagonalization
/// is too expensive. Stabilization tolerance `tol` is relative to the
/// matrix scale.
pub fn sym_lanczos_top(a: &SymMat, k: usize, tol: f64) -> Vec<f64> {
    if a.n <= 4 * k + 24 {
        return sym_top_eigenvalues(a, k);
    }
    let (_, d, e) = lanczos_basis(a, k, tol);
    let m = d.len();
    let tri = Tridiag { d, e };
    (0..k.min(m))
        .map(|j| tridiag_eigenvalue(&tri, m - 1 - j))
        .collect()
}

/// Largest eigenvalue and (unit) eigenvector by Lanczos; falls back to the
/// dense path on small matrices.
pub fn sym_lanczos_top_pair(a: &SymMat, tol: f64) -> (f64, Vec<f64>) {
    if a.n <= 60 {
        return sym_eigen_top_pair(a);
    }
    let (basis, d, e) = lanczos_basis(a, 1, tol);
    let m = d.len();
    let tri = Tridiag { d, e };
    let lambda = tridiag_eigenvalue(&tri, m - 1);
    let y = tridiag_eigenvector(&tri, lambda);
    let n = a.n;
    let mut v = vec![0.0; n];
    for (yi, q) in y.iter().zip(basis.iter()) {
        for (vi, qi) in v.iter_mut().zip(q.iter()) {
            *vi += yi * qi;
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    let av = a.matvec(&v);
    let rq: f64 = v.iter().zip(av.iter()).map(|(x, y)| x * y).sum();
    (rq, v)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
