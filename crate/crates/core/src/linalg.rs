//! Dense complex matrices and the handful of kernels the samplers need.
//!
//! Storage is row-major. Every matrix in this crate is small (d up to a few
//! dozen) and dense, so the kernels are plain loops.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum |h_jk - conj(h_kj)| accepted by the Hermitian kernels.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Sweep cap for the cyclic Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Relative off-diagonal Frobenius norm at which Jacobi stops.
pub const JACOBI_REL_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting bad shapes and non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::contract("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::contract(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::contract("matrix entries must be finite"));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = f(r, c);
            }
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (k, &v) in diag.iter().enumerate() {
            m[(k, k)] = Complex64::new(v, 0.0);
        }
        m
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

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self† · self`, computed without materializing the adjoint. The result
    /// is Hermitian to the last bit.
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            for k in j..n {
                let mut acc = ZERO;
                for r in 0..self.rows {
                    let row = self.row(r);
                    acc += row[j].conj() * row[k];
                }
                out.data[j * n + k] = acc;
                out.data[k * n + j] = acc.conj();
            }
            out.data[j * n + j].im = 0.0;
        }
        out
    }

    /// `self · self†`, Hermitian to the last bit.
    pub fn outer_gram(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            for k in j..n {
                let acc: Complex64 = self
                    .row(j)
                    .iter()
                    .zip(self.row(k))
                    .map(|(a, b)| a * b.conj())
                    .sum();
                out.data[j * n + k] = acc;
                out.data[k * n + j] = acc.conj();
            }
            out.data[j * n + j].im = 0.0;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.hs_norm_sqr().sqrt()
    }

    pub fn hs_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest |h_jk - conj(h_kj)|; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                let d = (self.data[j * n + k] - self.data[k * n + j].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    fn check_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::contract(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::contract(format!(
                "matrix is not Hermitian (defect {defect:e} > {HERMITIAN_TOL:e})"
            )));
        }
        Ok(())
    }

    /// `(H + H†) / 2`, with exactly real diagonal.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows;
        let mut out = self.clone();
        for j in 0..n {
            out.data[j * n + j] = Complex64::new(self.data[j * n + j].re, 0.0);
            for k in j + 1..n {
                let v = (self.data[j * n + k] + self.data[k * n + j].conj()) * 0.5;
                out.data[j * n + k] = v;
                out.data[k * n + j] = v.conj();
            }
        }
        out
    }

    /// Eigenvalues of a Hermitian matrix, ascending, via cyclic complex Jacobi rotations.
    pub fn hermitian_eigenvalues(&self) -> Result<EigenSpectrum> {
        self.check_hermitian()?;
        let n = self.rows;
        let mut h = self.hermitian_part().data;
        let scale = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if scale == 0.0 {
            return Ok(EigenSpectrum(vec![0.0; n]));
        }
        let target = JACOBI_REL_TOL * scale;

        let off_norm = |h: &[Complex64]| -> f64 {
            let mut s = 0.0;
            for j in 0..n {
                for k in j + 1..n {
                    s += 2.0 * h[j * n + k].norm_sqr();
                }
            }
            s.sqrt()
        };

        let mut converged = off_norm(&h) <= target;
        let mut sweeps = 0;
        while !converged && sweeps < JACOBI_MAX_SWEEPS {
            for p in 0..n {
                for q in p + 1..n {
                    jacobi_rotate(&mut h, n, p, q);
                }
            }
            sweeps += 1;
            converged = off_norm(&h) <= target;
        }
        if !converged {
            return Err(Error::numerical(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps (n = {n})"
            )));
        }

        let mut values: Vec<f64> = (0..n).map(|k| h[k * n + k].re).collect();
        values.sort_by(f64::total_cmp);
        Ok(EigenSpectrum(values))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.hermitian_eigenvalues()?.min())
    }

    /// Whether every eigenvalue of this Hermitian matrix is at least `-tol`.
    ///
    /// Runs a Cholesky factorization of `H + tol·I`, which succeeds exactly
    /// when that shifted matrix is positive definite. This is an order of
    /// magnitude cheaper than the full spectrum.
    pub fn is_positive_semidefinite(&self, tol: f64) -> Result<bool> {
        self.check_hermitian()?;
        let n = self.rows;
        let h = self.hermitian_part();
        // lower-triangular factor, row-major
        let mut l = vec![ZERO; n * n];
        for j in 0..n {
            let mut pivot = h.data[j * n + j].re + tol;
            for k in 0..j {
                pivot -= l[j * n + k].norm_sqr();
            }
            if pivot <= 0.0 || !pivot.is_finite() {
                return Ok(false);
            }
            let pivot = pivot.sqrt();
            l[j * n + j] = Complex64::new(pivot, 0.0);
            for i in j + 1..n {
                let mut acc = h.data[i * n + j];
                for k in 0..j {
                    acc -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = acc / pivot;
            }
        }
        Ok(true)
    }

    /// Right-multiplies in place by the two-level unitary acting on columns
    /// `i` and `j` with block `[[a, b], [c, e]]` (rows i, j; columns i, j).
    pub(crate) fn rotate_columns(&mut self, i: usize, j: usize, block: [[Complex64; 2]; 2]) {
        let [[a, b], [c, e]] = block;
        for r in 0..self.rows {
            let base = r * self.cols;
            let xi = self.data[base + i];
            let xj = self.data[base + j];
            self.data[base + i] = xi * a + xj * c;
            self.data[base + j] = xi * b + xj * e;
        }
    }

    pub(crate) fn scale_in_place(&mut self, s: Complex64) {
        for z in &mut self.data {
            *z *= s;
        }
    }
}

/// One complex Jacobi rotation annihilating h[p][q].
fn jacobi_rotate(h: &mut [Complex64], n: usize, p: usize, q: usize) {
    let hpq = h[p * n + q];
    let g = hpq.norm();
    if g == 0.0 {
        return;
    }
    let app = h[p * n + p].re;
    let aqq = h[q * n + q].re;
    // phase that makes the (p, q) element real and positive
    let phase = hpq / g;
    let phase_c = phase.conj();

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let hkp = h[k * n + p];
        let hkq = h[k * n + q] * phase_c;
        let new_kp = hkp * c - hkq * s;
        let new_kq = hkp * s + hkq * c;
        h[k * n + p] = new_kp;
        h[p * n + k] = new_kp.conj();
        let new_kq = new_kq * phase;
        h[k * n + q] = new_kq;
        h[q * n + k] = new_kq.conj();
    }
    h[p * n + p] = Complex64::new(app - t * g, 0.0);
    h[q * n + q] = Complex64::new(aqq + t * g, 0.0);
    h[p * n + q] = ZERO;
    h[q * n + p] = ZERO;
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real eigenvalues of a Hermitian matrix, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum(Vec<f64>);

impl EigenSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0[0]
    }

    pub fn max(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn sum_squares(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Free-function form of [`ComplexMatrix::multiply`].
pub fn multiply(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.multiply(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.hs_norm()
}

pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<EigenSpectrum> {
    h.hermitian_eigenvalues()
}

pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    h.min_eigenvalue()
}
