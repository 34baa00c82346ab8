//! Dense linear algebra for desk-scale matrices: the leading singular triplet
//! by power iteration and a full SVD by one-sided Jacobi rotations.

use crate::error::{Error, Result};
use crate::vector::{dot, RealVector, Shape};

/// Largest dimension accepted by [`full_svd`].
pub const MAX_SVD_DIM: usize = 512;

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITER: usize = 5000;
/// Number of vectors iterated together in [`top_singular_triplet`].
pub const POWER_BLOCK: usize = 4;
const JACOBI_MAX_SWEEPS: usize = 80;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: Shape::Matrix(rows, cols),
                found: Shape::Vector(data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diagonal(rows: usize, cols: usize, diag: &[f64]) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d;
        }
        m
    }

    /// Views a matrix-shaped vector as a matrix.
    pub fn from_vector(v: &RealVector) -> Result<Self> {
        match v.shape() {
            Shape::Matrix(m, n) => Ok(Matrix {
                rows: m,
                cols: n,
                data: v.as_slice().to_vec(),
            }),
            found @ Shape::Vector(_) => Err(Error::Dimension {
                expected: Shape::Matrix(0, 0),
                found,
            }),
        }
    }

    pub fn into_vector(self) -> Result<RealVector> {
        RealVector::matrix(self.rows, self.cols, self.data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn frobenius_norm(&self) -> f64 {
        dot(&self.data, &self.data).sqrt()
    }

    /// `A x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        self.data.chunks_exact(self.cols.max(1)).take(self.rows).map(|row| dot(row, x)).collect()
    }

    /// `Aᵀ y`
    pub fn mul_vec_t(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * yi;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: Shape::Matrix(self.cols, other.cols),
                found: Shape::Matrix(other.rows, other.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Leading singular triplet `A v1 = s1 u1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdTriplet {
    pub u1: Vec<f64>,
    pub s1: f64,
    pub v1: Vec<f64>,
    /// Set for the zero matrix, where `u1`, `v1` are arbitrary unit vectors.
    pub degenerate: bool,
    pub iterations: usize,
}

/// `A = U diag(S) Vᵀ` with `U` (m x m) and `V` (n x n) orthogonal and `S`
/// sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSvd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl FullSvd {
    pub fn nuclear_norm(&self) -> f64 {
        self.singular_values.iter().sum()
    }

    /// `Σ_i w_i u_i v_iᵀ` for the given weights (one per singular value).
    pub fn recompose(&self, weights: &[f64]) -> Matrix {
        let (m, n) = (self.u.rows, self.v.rows);
        let mut out = Matrix::zeros(m, n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..m {
                let a = w * self.u.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * self.v.get(j, k);
                }
            }
        }
        out
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Deterministic start vector: ones with a small irrational perturbation,
/// so it is not orthogonal to the structured singular vectors (e.g.
/// `(1, -1)/sqrt 2`) that an exact all-ones vector misses.
fn start_vector(len: usize, salt: usize) -> Vec<f64> {
    const PHI: f64 = 0.618_033_988_749_894_9;
    let mut v: Vec<f64> = (0..len)
        .map(|i| {
            let t = ((i + 1 + salt * 7) as f64 * PHI).fract();
            1.0 + 0.5 * (t - 0.5)
        })
        .collect();
    normalize(&mut v);
    v
}

/// Makes the first clearly nonzero coordinate of `u` positive, flipping `v`
/// along with it.
fn fix_sign(u: &mut [f64], v: &mut [f64]) {
    if let Some(&first) = u.iter().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Leading singular triplet by block power iteration on the Gram operator
/// `AᵀA`, with a Rayleigh-Ritz step on the block each sweep.
///
/// The block (up to [`POWER_BLOCK`] vectors) makes convergence depend on the
/// gap to the first singular value outside the block rather than on
/// `s1 - s2`, which is often tiny for the drift matrices the solver feeds
/// the nuclear-ball LMO. Stops when `‖Aᵀu − s v‖ ≤ 1e-10 s`, i.e.
/// `‖G v − λ v‖ ≤ 1e-10 λ` for `G = AᵀA`.
pub fn top_singular_triplet(a: &Matrix) -> Result<SvdTriplet> {
    let (m, n) = (a.rows, a.cols);
    if m == 0 || n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    let fro = a.frobenius_norm();
    if !fro.is_finite() {
        return Err(Error::NonFinite { index: 0 });
    }
    if fro == 0.0 {
        let mut u1 = vec![0.0; m];
        let mut v1 = vec![0.0; n];
        u1[0] = 1.0;
        v1[0] = 1.0;
        return Ok(SvdTriplet { u1, s1: 0.0, v1, degenerate: true, iterations: 0 });
    }
    if m < n {
        let t = top_singular_triplet(&a.transpose())?;
        let (mut u1, mut v1) = (t.v1, t.u1);
        fix_sign(&mut u1, &mut v1);
        return Ok(SvdTriplet { u1, v1, ..t });
    }

    // n <= m from here on; the block lives in R^n.
    let width = n.min(POWER_BLOCK);
    let mut salt = 0;
    let mut block = fresh_block(n, width, &mut salt);
    let mut found = None;
    for it in 1..=POWER_MAX_ITER {
        // Rayleigh-Ritz: the SVD of A X gives the best rank-one pair in span(X).
        let ax = block_apply(&block, |x| a.mul_vec(x));
        let ax_mat = columns_to_matrix(&ax, m);
        let small = jacobi_svd(&ax_mat, false)?;
        let s = small.singular_values[0];
        if s <= 1e-14 * fro {
            // Block fell into the null space; move it.
            block = fresh_block(n, width, &mut salt);
            continue;
        }
        let u: Vec<f64> = (0..m).map(|i| small.u.get(i, 0)).collect();
        let mut v = vec![0.0; n];
        for (k, col) in block.iter().enumerate() {
            let w = small.v.get(k, 0);
            for (vi, ci) in v.iter_mut().zip(col) {
                *vi += w * ci;
            }
        }
        let atu = a.mul_vec_t(&u);
        let resid = atu.iter().zip(&v).map(|(g, vi)| (g - s * vi).powi(2)).sum::<f64>().sqrt();
        if resid <= POWER_TOL * s {
            found = Some((u, s, v, it));
            break;
        }
        let next = block_apply(&ax, |y| a.mul_vec_t(y));
        block = orthonormalize(next);
        if block.is_empty() {
            block = fresh_block(n, width, &mut salt);
        }
    }
    let (mut u1, _, mut v1, iterations) = found.ok_or(Error::NoConvergence {
        what: "power iteration",
        iterations: POWER_MAX_ITER,
    })?;
    normalize(&mut u1);
    normalize(&mut v1);
    // s1 = u1ᵀ A v1, evaluated after both vectors are normalized.
    let s1 = dot(&u1, &a.mul_vec(&v1)).abs();
    fix_sign(&mut u1, &mut v1);
    Ok(SvdTriplet { u1, s1, v1, degenerate: false, iterations })
}

fn fresh_block(len: usize, width: usize, salt: &mut usize) -> Vec<Vec<f64>> {
    let cols: Vec<Vec<f64>> = (0..width)
        .map(|j| {
            let mut v = start_vector(len, *salt + j);
            // Spread the later columns apart before orthonormalizing.
            if j > 0 {
                v.iter_mut().enumerate().for_each(|(i, x)| {
                    if (i + j) % (j + 1) == 0 {
                        *x = -*x;
                    }
                });
            }
            v
        })
        .collect();
    *salt += width;
    orthonormalize(cols)
}

fn block_apply(block: &[Vec<f64>], f: impl Fn(&[f64]) -> Vec<f64>) -> Vec<Vec<f64>> {
    block.iter().map(|c| f(c)).collect()
}

fn columns_to_matrix(cols: &[Vec<f64>], rows: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate().take(rows) {
            out.set(i, j, x);
        }
    }
    out
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns that
/// collapse (relative to the largest input column) are dropped.
fn orthonormalize(cols: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let scale = cols.iter().map(|c| dot(c, c).sqrt()).fold(0.0, f64::max);
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(cols.len());
    for mut c in cols {
        for _ in 0..2 {
            for q in &out {
                let p = dot(&c, q);
                for (x, y) in c.iter_mut().zip(q) {
                    *x -= p * y;
                }
            }
        }
        if normalize(&mut c) > 1e-12 * scale {
            out.push(c);
        }
    }
    out
}

/// Full SVD by one-sided (Hestenes) Jacobi rotations.
pub fn full_svd(a: &Matrix) -> Result<FullSvd> {
    jacobi_svd(a, true)
}

/// With `complete = false` and `m >= n`, `u` is the thin `m x n` factor and
/// columns for zero singular values are left at zero.
fn jacobi_svd(a: &Matrix, complete: bool) -> Result<FullSvd> {
    let (m, n) = (a.rows, a.cols);
    if m == 0 || n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    if m.max(n) > MAX_SVD_DIM {
        return Err(Error::invalid(format!(
            "full_svd is limited to {MAX_SVD_DIM} rows/columns, got {m}x{n}"
        )));
    }
    if a.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index: a.data.iter().position(|v| !v.is_finite()).unwrap() });
    }
    if m < n {
        let t = jacobi_svd(&a.transpose(), true)?;
        return Ok(FullSvd { u: t.v, singular_values: t.singular_values, v: t.u });
    }

    // Columns of `w` converge to U_thin * S; `v` accumulates the rotations.
    let mut w: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    let eps = f64::EPSILON;
    let tol = m as f64 * eps;
    let noise = (eps * a.frobenius_norm()).powi(2);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if alpha <= noise || beta <= noise || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut w, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "jacobi svd", iterations: JACOBI_MAX_SWEEPS });
    }

    let sigma: Vec<f64> = w.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]).then(i.cmp(&j)));

    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let tiny = smax * (m.max(n) as f64) * eps;

    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut v_mat = Matrix::zeros(n, n);
    let mut sorted = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        sorted.push(sigma[j]);
        for (i, &x) in v[j].iter().enumerate() {
            v_mat.set(i, k, x);
        }
        if sigma[j] > tiny && sigma[j] > 0.0 {
            u_cols.push(w[j].iter().map(|x| x / sigma[j]).collect());
        }
    }
    // Zero singular values: their left vectors come from basis completion.
    for s in sorted.iter_mut().skip(u_cols.len()) {
        *s = 0.0;
    }
    if complete {
        complete_basis(&mut u_cols, m);
    }

    let mut u_mat = Matrix::zeros(m, if complete { m } else { n });
    for (k, col) in u_cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            u_mat.set(i, k, x);
        }
    }
    Ok(FullSvd { u: u_mat, singular_values: sorted, v: v_mat })
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Extends an orthonormal set of columns to a basis of R^dim with modified
/// Gram-Schmidt over the standard basis (two passes).
fn complete_basis(cols: &mut Vec<Vec<f64>>, dim: usize) {
    let mut e = 0;
    while cols.len() < dim && e < dim {
        let mut cand = vec![0.0; dim];
        cand[e] = 1.0;
        e += 1;
        for _ in 0..2 {
            for c in cols.iter() {
                let proj = dot(&cand, c);
                for (x, y) in cand.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        if normalize(&mut cand) > 1e-6 {
            cols.push(cand);
        }
    }
}

/// Sum of singular values.
pub fn nuclear_norm(a: &Matrix) -> Result<f64> {
    Ok(full_svd(a)?.nuclear_norm())
}
