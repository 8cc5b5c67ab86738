//! Dense complex matrices and the two spectral routines the rest of the crate
//! is built on.
//!
//! [`hermitian_eigensystem`] reduces a Hermitian matrix to real symmetric
//! tridiagonal form with Householder reflections and then runs implicit QL
//! iterations. [`svd`] is a one-sided (Hestenes) Jacobi method. The two share
//! no code, so checking singular values against eigenvalues of `A†A` compares
//! independent algorithms.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for the Hermiticity predicate.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Self::from_fn(rows.len(), n_cols, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Single column matrix.
    pub fn column_vector(entries: &[Complex64]) -> Self {
        Self { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        Ok(acc)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `A ⊗ B`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise distance to `other`. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |M[i][j] − conj(M[j][i])|`, infinite for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let product = self.adjoint().matmul(self).expect("square");
        product.max_abs_diff(&Self::identity(self.rows)) <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panics on inner-dimension mismatch; use [`ComplexMatrix::matmul`] for a
/// checked product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("inner dimensions must agree")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues in ascending order and the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(values) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.values[j]);
        &scaled * &self.vectors.adjoint()
    }
}

/// Thin singular value decomposition `A = U Σ V†` with `k = min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × k`, orthonormal columns.
    pub left: ComplexMatrix,
    /// Descending, nonnegative.
    pub singular_values: Vec<f64>,
    /// `k × cols`, orthonormal rows.
    pub right_dagger: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.singular_values.len();
        let scaled =
            ComplexMatrix::from_fn(self.left.rows(), k, |i, j| self.left[(i, j)] * self.singular_values[j]);
        &scaled * &self.right_dagger
    }
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigenproblem needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let deviation = m.hermiticity_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tolerance: tol });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Degenerate eigenvalues get an arbitrary orthonormal basis of their
/// eigenspace.
pub fn hermitian_eigensystem(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    check_hermitian(m, tol)?;
    let (values, vectors) = tridiagonal_ql(m, true);
    Ok(HermitianEigen { values, vectors: vectors.expect("vectors requested") })
}

/// Eigenvalues only, ascending. Skips the eigenvector accumulation.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    check_hermitian(m, tol)?;
    Ok(tridiagonal_ql(m, false).0)
}

fn tridiagonal_ql(m: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = m.rows;
    // symmetrize so the reduction sees an exactly Hermitian input
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut q = want_vectors.then(|| ComplexMatrix::identity(n));

    // Householder reduction: after step k, column k is zero below the subdiagonal.
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let x: Vec<Complex64> = (0..len).map(|i| a[(k + 1 + i, k)]).collect();
        let x_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail_norm = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if tail_norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let alpha = -phase * x_norm;
        let mut v = x.clone();
        v[0] -= alpha;
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= v_norm;
        }

        // trailing block update A22 <- H A22 H with H = I - 2 v v†
        let w: Vec<Complex64> = (0..len)
            .map(|i| (0..len).map(|j| a[(k + 1 + i, k + 1 + j)] * v[j]).sum())
            .collect();
        let c: Complex64 = v.iter().zip(&w).map(|(vi, wi)| vi.conj() * wi).sum();
        let u: Vec<Complex64> = w.iter().zip(&v).map(|(wi, vi)| wi - c.re * vi).collect();
        for i in 0..len {
            for j in 0..len {
                a[(k + 1 + i, k + 1 + j)] -= 2.0 * (v[i] * u[j].conj() + u[i] * v[j].conj());
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..len {
            a[(k + 1 + i, k)] = ZERO;
            a[(k, k + 1 + i)] = ZERO;
        }

        if let Some(q) = q.as_mut() {
            // Q <- Q H on columns k+1..n
            for r in 0..n {
                let s: Complex64 = (0..len).map(|j| q[(r, k + 1 + j)] * v[j]).sum();
                for j in 0..len {
                    q[(r, k + 1 + j)] -= 2.0 * s * v[j].conj();
                }
            }
        }
    }

    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    // Phase the complex subdiagonal to real nonnegative values.
    let mut phases = vec![ONE; n];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1, i)];
        let r = sub.norm();
        e[i] = r;
        phases[i + 1] = if r > 0.0 { phases[i] * (sub / r) } else { phases[i] };
    }

    let mut z = want_vectors.then(|| vec![vec![0.0f64; n]; n]);
    if let Some(z) = z.as_mut() {
        for (i, row) in z.iter_mut().enumerate() {
            row[i] = 1.0;
        }
    }
    implicit_ql(&mut d, &mut e, z.as_mut());

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // eigenvectors of A are Q · diag(phases) · Z
            let qd = ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]);
            let zc = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(z[i][order[j]], 0.0));
            Some(&qd * &zc)
        }
        _ => None,
    };
    (values, vectors)
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
/// `d` holds the diagonal, `e[i]` couples `i` and `i + 1`. Rotations are
/// accumulated into the rows of `z` when present.
fn implicit_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Vec<f64>>>) {
    let n = d.len();
    if n < 2 {
        return;
    }
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations <= 60, "QL iteration failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        let t = row[i + 1];
                        row[i + 1] = s * row[i] + c * t;
                        row[i] = c * row[i] - s * t;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// Thin SVD by one-sided Jacobi rotations.
pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows < a.cols {
        // A† = V Σ U†
        let t = svd(&a.adjoint());
        return Svd { left: t.right_dagger.adjoint(), singular_values: t.singular_values, right_dagger: t.left.adjoint() };
    }
    let (m, n) = (a.rows, a.cols);
    // columns of `u` converge to U Σ; `v` accumulates the same rotations
    let mut u: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect()).collect();
    let threshold = f64::EPSILON * (m as f64);

    for _sweep in 0..80 {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha: f64 = u[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = u[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = u[i].iter().zip(&u[j]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + zeta.hypot(1.0))
                } else {
                    -1.0 / (-zeta + zeta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                let back = phase.conj();
                for (x, y) in rotate_pair(&mut u, i, j) {
                    let yj = *y * back;
                    let xi = *x;
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
                for (x, y) in rotate_pair(&mut v, i, j) {
                    let yj = *y * back;
                    let xi = *x;
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = u.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma_max = norms.iter().cloned().fold(0.0, f64::max);
    let cutoff = sigma_max * f64::EPSILON * (m.max(n) as f64);

    let mut left_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut singular_values = Vec::with_capacity(n);
    let mut needs_completion = Vec::new();
    for (pos, &j) in order.iter().enumerate() {
        let sigma = norms[j];
        singular_values.push(sigma);
        if sigma > cutoff && sigma > 0.0 {
            left_cols.push(u[j].iter().map(|z| z / sigma).collect());
        } else {
            left_cols.push(vec![ZERO; m]);
            needs_completion.push(pos);
        }
    }
    complete_orthonormal(&mut left_cols, &needs_completion, m);

    let left = ComplexMatrix::from_fn(m, n, |i, k| left_cols[k][i]);
    let right_dagger = ComplexMatrix::from_fn(n, n, |k, i| v[order[k]][i].conj());
    Svd { left, singular_values, right_dagger }
}

fn rotate_pair(cols: &mut [Vec<Complex64>], i: usize, j: usize) -> impl Iterator<Item = (&mut Complex64, &mut Complex64)> {
    let (head, tail) = cols.split_at_mut(j);
    head[i].iter_mut().zip(tail[0].iter_mut())
}

/// Replaces the listed columns by unit vectors orthogonal to every other column.
fn complete_orthonormal(cols: &mut [Vec<Complex64>], missing: &[usize], dim: usize) {
    let mut candidate = 0;
    for &slot in missing {
        loop {
            assert!(candidate < dim, "cannot complete orthonormal basis");
            let mut vec = vec![ZERO; dim];
            vec[candidate] = ONE;
            candidate += 1;
            // two passes of Gram-Schmidt
            for _ in 0..2 {
                for (k, col) in cols.iter().enumerate() {
                    if k == slot || col.iter().all(|z| *z == ZERO) {
                        continue;
                    }
                    let overlap: Complex64 = col.iter().zip(&vec).map(|(c, x)| c.conj() * x).sum();
                    for (x, c) in vec.iter_mut().zip(col) {
                        *x -= overlap * c;
                    }
                }
            }
            let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                cols[slot] = vec.into_iter().map(|z| z / norm).collect();
                break;
            }
        }
    }
}
