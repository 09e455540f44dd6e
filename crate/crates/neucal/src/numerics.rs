//! Complex dense matrix arithmetic and factorizations.
//!
//! Everything here is generic over the real scalar type through [`Scalar`];
//! the rest of the crate works with the `f64` aliases exported at the crate
//! root. Matrices are row-major, owned, and all operations are pure.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// Floating-point scalar usable as the real/imaginary part of matrix entries.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Shorthand for lossy conversion of literals and tolerances.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Relative pivot threshold below which LU declares the matrix singular.
pub const SINGULARITY_RTOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("dimension mismatch: {left_rows}x{left_cols} is incompatible with {right_rows}x{right_cols}")]
    DimMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have full row rank (rows <= cols), got {rows}x{cols}")]
    NotWide { rows: usize, cols: usize },
    #[error("matrix is singular to working precision (pivot {pivot})")]
    SingularMatrix { pivot: usize },
}

/// Dense complex matrix with row-major storage.
#[derive(Clone, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds from row-major entries; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            data.len(),
            rows,
            cols
        );
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, z) in entries.iter().enumerate() {
            m[(i, i)] = *z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, col: &[Complex<T>]) {
        assert_eq!(col.len(), self.rows);
        for (i, z) in col.iter().enumerate() {
            self[(i, j)] = *z;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Entrywise conjugate (no transpose).
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.map(|z| Complex::new(z.re * s, z.im * s))
    }

    pub fn add(&self, other: &Self) -> Result<Self, NumericsError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NumericsError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), NumericsError> {
        if self.shape() != other.shape() {
            return Err(NumericsError::DimMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Complex matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self, NumericsError> {
        if self.cols != other.rows {
            return Err(NumericsError::DimMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        // Accumulate row-by-row so the inner traversal of `other` is contiguous.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    /// Sum of squared moduli; equals `Re tr(A A^H)`.
    pub fn frob_norm_sq(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.re * z.re + z.im * z.im)
    }

    pub fn frob_norm(&self) -> T {
        self.frob_norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
    }

    /// LU factorization with partial pivoting. Returns the packed factors and
    /// the row permutation; fails when a pivot falls below
    /// `SINGULARITY_RTOL * ||A||_F`.
    fn lu_factor(&self) -> Result<(Vec<Complex<T>>, Vec<usize>), NumericsError> {
        let n = self.rows;
        let tol = T::of(SINGULARITY_RTOL) * self.frob_norm();
        let tol_sq = tol * tol;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm_sqr();
            for i in (k + 1)..n {
                let cand = lu[i * n + k].norm_sqr();
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            if best <= tol_sq {
                return Err(NumericsError::SingularMatrix { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    let upper = lu[k * n + j];
                    lu[i * n + j] = lu[i * n + j] - factor * upper;
                }
            }
        }
        Ok((lu, perm))
    }

    /// Solves `self * X = rhs` for square `self` via LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self, NumericsError> {
        if self.rows != self.cols {
            return Err(NumericsError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.cols != rhs.rows {
            return Err(NumericsError::DimMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let n = self.rows;
        let (lu, perm) = self.lu_factor()?;
        let mut out = Self::zeros(n, rhs.cols);
        let mut y = vec![Complex::new(T::zero(), T::zero()); n];
        for c in 0..rhs.cols {
            // Forward substitution on the permuted right-hand side.
            for i in 0..n {
                let mut acc = rhs[(perm[i], c)];
                for j in 0..i {
                    acc = acc - lu[i * n + j] * y[j];
                }
                y[i] = acc;
            }
            // Back substitution.
            for i in (0..n).rev() {
                let mut acc = y[i];
                for j in (i + 1)..n {
                    acc = acc - lu[i * n + j] * out[(j, c)];
                }
                out[(i, c)] = acc / lu[i * n + i];
            }
        }
        Ok(out)
    }

    /// Matrix inverse via LU with partial pivoting.
    pub fn inverse(&self) -> Result<Self, NumericsError> {
        if self.rows != self.cols {
            return Err(NumericsError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.solve(&Self::identity(self.rows))
    }

    /// Right pseudo-inverse `A^H (A A^H)^{-1}` for full-row-rank wide matrices.
    /// Satisfies `A * right_pinv(A) == I` up to factorization error.
    pub fn right_pinv(&self) -> Result<Self, NumericsError> {
        if self.rows > self.cols {
            return Err(NumericsError::NotWide {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let ah = self.hermitian();
        let gram = self.matmul(&ah)?;
        ah.matmul(&gram.inverse()?)
    }
}

impl<T: Scalar> Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// `sum_i conj(a[i, col_a]) * b[i, col_b]`; the inner product `a_col^H b_col`.
pub fn col_dot_h<T: Scalar>(a: &CMat<T>, col_a: usize, b: &CMat<T>, col_b: usize) -> Complex<T> {
    debug_assert_eq!(a.rows(), b.rows());
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..a.rows() {
        acc = acc + a[(i, col_a)].conj() * b[(i, col_b)];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CMatrix, Complex64};
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_mat(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        a.data()
            .iter()
            .zip(b.data())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn matmul_identity() {
        let mut rng = crate::rng::derive_rng(1, 0, 0);
        let a = random_mat(2, 2, &mut rng);
        let i2 = CMatrix::identity(2);
        let prod = i2.matmul(&a).unwrap();
        assert_eq!(prod, a);
    }

    #[test]
    fn matmul_imaginary_unit_squares_to_minus_one() {
        let j = CMatrix::from_vec(1, 1, vec![c(0.0, 1.0)]);
        let prod = j.matmul(&j).unwrap();
        assert!((prod[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn matmul_matches_triple_loop_oracle() {
        let mut rng = crate::rng::derive_rng(2, 0, 0);
        let a = random_mat(3, 4, &mut rng);
        let b = random_mat(4, 2, &mut rng);
        let fast = a.matmul(&b).unwrap();
        // Independent naive reference.
        let mut slow = CMatrix::zeros(3, 2);
        for i in 0..3 {
            for j in 0..2 {
                let mut acc = c(0.0, 0.0);
                for k in 0..4 {
                    acc += a[(i, k)] * b[(k, j)];
                }
                slow[(i, j)] = acc;
            }
        }
        assert!(max_abs_diff(&fast, &slow) < 1e-14);
    }

    #[test]
    fn matmul_shape_mismatch_reports_both_shapes() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 3);
        let err = a.matmul(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("2x3"), "message was {msg}");
    }

    #[test]
    fn hermitian_scalar_conjugates() {
        let a = CMatrix::from_vec(1, 1, vec![c(1.0, 1.0)]);
        assert_eq!(a.hermitian()[(0, 0)], c(1.0, -1.0));
    }

    #[test]
    fn hermitian_of_real_symmetric_is_identity_map() {
        let a = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(5.0, 0.0)]);
        assert_eq!(a.hermitian(), a);
    }

    #[test]
    fn hermitian_swaps_and_conjugates() {
        let mut rng = crate::rng::derive_rng(3, 0, 0);
        let a = random_mat(2, 3, &mut rng);
        let ah = a.hermitian();
        assert_eq!(ah.shape(), (3, 2));
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(ah[(j, i)], a[(i, j)].conj());
            }
        }
        assert_eq!(ah.hermitian(), a);
    }

    #[test]
    fn inverse_of_diagonal() {
        let a = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let inv = a.inverse().unwrap();
        assert!((inv[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((inv[(1, 1)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!(inv[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn inverse_of_identity() {
        let i5 = CMatrix::identity(5);
        assert!(max_abs_diff(&i5.inverse().unwrap(), &i5) < 1e-15);
    }

    #[test]
    fn inverse_residual_small() {
        let mut rng = crate::rng::derive_rng(4, 0, 0);
        let a = random_mat(5, 5, &mut rng);
        let inv = a.inverse().unwrap();
        let residual = a.matmul(&inv).unwrap().sub(&CMatrix::identity(5)).unwrap();
        assert!(residual.frob_norm() <= 1e-10 * a.frob_norm());
    }

    #[test]
    fn singular_matrix_reports_pivot() {
        let a = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        match a.inverse() {
            Err(NumericsError::SingularMatrix { pivot }) => assert_eq!(pivot, 1),
            other => panic!("expected singular matrix, got {other:?}"),
        }
    }

    #[test]
    fn right_pinv_unit_row() {
        let x = CMatrix::from_vec(1, 2, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let p = x.right_pinv().unwrap();
        assert_eq!(p.shape(), (2, 1));
        assert!((p[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(p[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn right_pinv_scaled_identity() {
        let x = CMatrix::identity(3).scale_re(2.0);
        let p = x.right_pinv().unwrap();
        assert!(max_abs_diff(&p, &CMatrix::identity(3).scale_re(0.5)) < 1e-14);
    }

    #[test]
    fn right_pinv_residual() {
        let mut rng = crate::rng::derive_rng(5, 0, 0);
        let x = random_mat(4, 8, &mut rng);
        let p = x.right_pinv().unwrap();
        let residual = x.matmul(&p).unwrap().sub(&CMatrix::identity(4)).unwrap();
        assert!(residual.max_abs() < 1e-10);
    }

    #[test]
    fn frob_norm_sq_examples() {
        assert!((CMatrix::identity(3).frob_norm_sq() - 3.0).abs() < 1e-15);
        let a = CMatrix::from_vec(1, 1, vec![c(3.0, 4.0)]);
        assert!((a.frob_norm_sq() - 25.0).abs() < 1e-15);
    }

    #[test]
    fn frob_norm_sq_is_trace_of_gram() {
        let mut rng = crate::rng::derive_rng(6, 0, 0);
        let a = random_mat(3, 5, &mut rng);
        let gram = a.matmul(&a.hermitian()).unwrap();
        let trace: Complex64 = (0..3).map(|i| gram[(i, i)]).sum();
        assert!((a.frob_norm_sq() - trace.re).abs() < 1e-12);
        assert!(trace.im.abs() < 1e-12);
    }

    #[test]
    fn solve_matches_inverse() {
        let mut rng = crate::rng::derive_rng(7, 0, 0);
        let a = random_mat(4, 4, &mut rng);
        let b = random_mat(4, 2, &mut rng);
        let x = a.solve(&b).unwrap();
        let x2 = a.inverse().unwrap().matmul(&b).unwrap();
        assert!(max_abs_diff(&x, &x2) < 1e-10);
    }

    #[test]
    fn generic_f32_instantiation_compiles_and_runs() {
        let a: CMat<f32> = CMat::identity(3).scale_re(2.0);
        let inv = a.inverse().unwrap();
        assert!((inv[(1, 1)].re - 0.5).abs() < 1e-6);
    }
}
