//! Dense complex matrices standing in for bounded operators between
//! finite-dimensional spaces.

mod eigen;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative Hermiticity tolerance `‖M - M*‖ / ‖M‖`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues above `-PSD_CLAMP * ‖M‖` are clamped to zero by the PSD roots.
pub const PSD_CLAMP: f64 = 1e-10;
/// `psd_inv_sqrt` requires `λ_min > POSITIVE_DEFINITE_RATIO * λ_max`.
pub const POSITIVE_DEFINITE_RATIO: f64 = 1e-12;
/// Largest condition number accepted by [`inverse`].
pub const CONDITION_LIMIT: f64 = 1e12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A `rows × cols` complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl LinearMap {
    /// Builds a map from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} map",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols.max(1),
                col: k % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// Builds a `rows × columns.len()` map whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let mut data = vec![ZERO; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, &v) in col.iter().enumerate() {
                data[i * cols + j] = v;
            }
        }
        Self::new(rows, cols, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|z| z * s).collect())
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|z| z * s).collect())
    }

    /// `self · v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length does not match map");
        (0..self.rows)
            .map(|i| {
                let mut acc = ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += a * b;
                }
                acc
            })
            .collect()
    }

    /// `self · other`; panics on shape mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let orow = &mut out[i * m..(i + 1) * m];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, b) in orow.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Self::from_raw(n, m, out)
    }

    /// `self · other*`, computed as row inner products. The result is exactly
    /// Hermitian when `other` is `self`.
    pub fn mul_adjoint(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "inner dimensions differ");
        let (n, m) = (self.rows, other.rows);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let a = self.row(i);
            for j in 0..m {
                let b = other.row(j);
                let mut acc = ZERO;
                for (x, y) in a.iter().zip(b) {
                    acc += x * y.conj();
                }
                out[i * m + j] = acc;
            }
        }
        Self::from_raw(n, m, out)
    }

    /// `self* · other`.
    pub fn adjoint_mul(&self, other: &Self) -> Self {
        self.adjoint().matmul(other)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    /// `‖M - M*‖_F / ‖M‖_F` (zero for the zero matrix).
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut diff = 0.0;
        for i in 0..n {
            for j in 0..n {
                diff += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        let scale = self.frobenius_norm();
        if scale == 0.0 {
            0.0
        } else {
            libm::sqrt(diff) / scale
        }
    }

    fn hermitian_part(&self) -> Self {
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    fn check_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }
}

impl Index<(usize, usize)> for LinearMap {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for LinearMap {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &LinearMap {
    type Output = LinearMap;
    fn add(self, rhs: &LinearMap) -> LinearMap {
        self.check_same_shape(rhs);
        LinearMap::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &LinearMap {
    type Output = LinearMap;
    fn sub(self, rhs: &LinearMap) -> LinearMap {
        self.check_same_shape(rhs);
        LinearMap::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &LinearMap {
    type Output = LinearMap;
    fn neg(self) -> LinearMap {
        self.scale(-1.0)
    }
}

impl Mul for &LinearMap {
    type Output = LinearMap;
    fn mul(self, rhs: &LinearMap) -> LinearMap {
        self.matmul(rhs)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub eigenvectors: LinearMap,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `V f(Λ) V*`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> LinearMap {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mut scaled = v.clone();
        for (c, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            for r in 0..n {
                scaled[(r, c)] *= w;
            }
        }
        scaled.mul_adjoint(v)
    }

    pub fn reconstruct(&self) -> LinearMap {
        self.map(|x| x)
    }
}

/// Largest singular value.
pub fn operator_norm(m: &LinearMap) -> f64 {
    if m.is_zero() || m.rows == 0 || m.cols == 0 {
        return 0.0;
    }
    let gram = if m.rows >= m.cols {
        let adj = m.adjoint();
        adj.mul_adjoint(&adj)
    } else {
        m.mul_adjoint(m)
    };
    let (values, _) = eigen::hermitian_eigen(&gram, false);
    libm::sqrt(values.last().copied().unwrap_or(0.0).max(0.0))
}

/// Singular values in descending order, from the Gram matrix spectrum.
/// Small singular values are resolved only to `sqrt(eps) * σ_max`.
pub fn singular_values(m: &LinearMap) -> Vec<f64> {
    let gram = m.adjoint().matmul(m);
    let (values, _) = eigen::hermitian_eigen(&gram, false);
    values.iter().rev().map(|&x| libm::sqrt(x.max(0.0))).collect()
}

fn require_hermitian(m: &LinearMap) -> Result<LinearMap> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square map, got {}x{}",
            m.rows, m.cols
        )));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    Ok(m.hermitian_part())
}

pub fn herm_eig(m: &LinearMap) -> Result<Spectrum> {
    let h = require_hermitian(m)?;
    let (eigenvalues, vectors) = eigen::hermitian_eigen(&h, true);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors.expect("eigenvectors requested"),
    })
}

/// Eigenvalues of a matrix that is Hermitian by construction (e.g. `X X*`).
pub(crate) fn eigenvalues_unchecked(m: &LinearMap) -> Vec<f64> {
    eigen::hermitian_eigen(m, false).0
}

/// Eigenvalues only (ascending); cheaper than [`herm_eig`].
pub fn herm_eigenvalues(m: &LinearMap) -> Result<Vec<f64>> {
    let h = require_hermitian(m)?;
    Ok(eigen::hermitian_eigen(&h, false).0)
}

fn psd_spectrum(m: &LinearMap) -> Result<Spectrum> {
    let mut eig = herm_eig(m)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let lowest = eig.min();
    if lowest < -PSD_CLAMP * scale {
        return Err(Error::NotPsd { eigenvalue: lowest });
    }
    for l in eig.eigenvalues.iter_mut() {
        *l = l.max(0.0);
    }
    Ok(eig)
}

/// The unique positive square root of a Hermitian PSD map.
pub fn psd_sqrt(m: &LinearMap) -> Result<LinearMap> {
    Ok(psd_spectrum(m)?.map(libm::sqrt))
}

/// `M^{-1/2}` for a Hermitian positive definite map.
pub fn psd_inv_sqrt(m: &LinearMap) -> Result<LinearMap> {
    let eig = psd_spectrum(m)?;
    let (lo, hi) = (eig.min(), eig.max());
    if hi <= 0.0 || lo <= POSITIVE_DEFINITE_RATIO * hi {
        return Err(Error::Singular {
            condition: if lo > 0.0 { hi / lo } else { f64::INFINITY },
        });
    }
    Ok(eig.map(|x| 1.0 / libm::sqrt(x)))
}

/// Inverse by LU with partial pivoting; rejects condition numbers above
/// [`CONDITION_LIMIT`].
pub fn inverse(m: &LinearMap) -> Result<LinearMap> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a {}x{} map",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut lu = m.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (p, pivot_abs) = (k..n)
            .map(|i| (i, lu[i * n + k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs == 0.0 {
            return Err(Error::Singular {
                condition: f64::INFINITY,
            });
        }
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
        }
        let pivot = lu[k * n + k];
        for i in k + 1..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            if factor == ZERO {
                continue;
            }
            let (upper, lower) = lu.split_at_mut(i * n);
            let krow = &upper[k * n + k + 1..k * n + n];
            let irow = &mut lower[k + 1..n];
            for (x, y) in irow.iter_mut().zip(krow) {
                *x -= factor * y;
            }
        }
    }
    // Solve LU X = P I column by column.
    let mut inv = vec![ZERO; n * n];
    let mut col = vec![ZERO; n];
    for c in 0..n {
        for i in 0..n {
            col[i] = if perm[i] == c { ONE } else { ZERO };
        }
        for i in 0..n {
            let mut acc = col[i];
            for j in 0..i {
                acc -= lu[i * n + j] * col[j];
            }
            col[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = col[i];
            for j in i + 1..n {
                acc -= lu[i * n + j] * col[j];
            }
            col[i] = acc / lu[i * n + i];
        }
        for i in 0..n {
            inv[i * n + c] = col[i];
        }
    }
    let inv = LinearMap::from_raw(n, n, inv);
    if inv.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Singular {
            condition: f64::INFINITY,
        });
    }
    let condition = operator_norm(m) * operator_norm(&inv);
    if condition.is_nan() || condition > CONDITION_LIMIT {
        return Err(Error::Singular { condition });
    }
    Ok(inv)
}

/// Solves `M x = b`.
pub fn solve(m: &LinearMap, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    Ok(inverse(m)?.apply(b))
}

/// Moore-Penrose pseudo-inverse of a Hermitian PSD map, discarding
/// eigenvalues at or below `rel_cutoff * λ_max`.
pub fn psd_pinv(m: &LinearMap, rel_cutoff: f64) -> Result<LinearMap> {
    let eig = psd_spectrum(m)?;
    let cut = rel_cutoff * eig.max();
    Ok(eig.map(|x| if x > cut { 1.0 / x } else { 0.0 }))
}
