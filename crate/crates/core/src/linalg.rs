//! Small dense complex matrices and tolerance-governed snapping to integers.
//!
//! Representation images are tiny (degree rarely above a few dozen) and
//! unitary-like, so everything here is straightforward row-major storage with
//! naive products and partial-pivoting row reduction.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::Index;

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Absolute entrywise tolerance used for identity tests and integer snapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 && eps < 1e-3 {
            Ok(Tolerance { eps })
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.eps
    }

    /// The same tolerance scaled by `factor`, kept inside the valid range.
    pub(crate) fn scaled(self, factor: f64) -> Tolerance {
        Tolerance { eps: (self.eps * factor).min(1e-4) }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: Self::DEFAULT_EPS }
    }
}

/// e^{2πi k/n}, exact at multiples of a quarter turn.
pub fn unit_root(k: i64, n: u64) -> C64 {
    assert!(n > 0, "root of unity of order zero");
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    if (4 * k) % n_i == 0 {
        return match 4 * k / n_i {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    let angle = TAU * (k as f64) / (n as f64);
    C64::new(Float::cos(angle), Float::sin(angle))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch { expected: rows * cols, found: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { C64::zero() })
    }

    /// 1×1 matrix.
    pub fn scalar(z: C64) -> Self {
        ComplexMatrix { rows: 1, cols: 1, data: vec![z] }
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

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, z: C64) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * z).collect() }
    }

    /// Entrywise `self + z * other`; shapes must agree.
    pub fn add_scaled(&self, other: &ComplexMatrix, z: C64) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b * z).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.add_scaled(other, -C64::one())
    }

    /// Largest entry modulus (0 for an empty matrix).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: Tolerance) -> bool {
        matches!(self.max_abs_diff(other), Ok(r) if r <= tol.eps())
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> Self {
        let rows = a.rows + b.rows;
        let cols = a.cols + b.cols;
        Self::from_fn(rows, cols, |i, j| {
            if i < a.rows && j < a.cols {
                a[(i, j)]
            } else if i >= a.rows && j >= a.cols {
                b[(i - a.rows, j - a.cols)]
            } else {
                C64::zero()
            }
        })
    }

    /// `a` stacked on top of `b`.
    pub fn vstack(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        if a.cols != b.cols {
            return Err(Error::DimensionMismatch {
                left_rows: a.rows,
                left_cols: a.cols,
                right_rows: b.rows,
                right_cols: b.cols,
            });
        }
        let mut data = a.data.clone();
        data.extend_from_slice(&b.data);
        Ok(ComplexMatrix { rows: a.rows + b.rows, cols: a.cols, data })
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    /// The sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Rows permuted so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(perm[i], j)])
    }

    fn check_same_shape(&self, other: &ComplexMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.data[i * a.cols + k];
            if aik.is_zero() {
                continue;
            }
            let brow = &b.data[k * b.cols..(k + 1) * b.cols];
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// `a^n` by repeated squaring; `a^0` is the identity.
pub fn mat_pow(a: &ComplexMatrix, mut n: u64) -> Result<ComplexMatrix> {
    a.require_square()?;
    let mut result = ComplexMatrix::identity(a.rows);
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = mat_mul(&result, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Ok(result)
}

/// True iff `a` is square and every entry of `a - I` has modulus at most `tol`.
pub fn is_identity(a: &ComplexMatrix, tol: Tolerance) -> bool {
    a.is_square() && identity_residual(a) <= tol.eps()
}

pub(crate) fn identity_residual(a: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            let target = if i == j { C64::one() } else { C64::zero() };
            worst = worst.max((a[(i, j)] - target).norm());
        }
    }
    worst
}

/// Forward elimination with partial pivoting; returns the pivot columns.
///
/// A column is a pivot when its best remaining entry exceeds `tol.eps()`
/// times `scale`.
fn eliminate(a: &ComplexMatrix, tol: Tolerance, scale: f64) -> Vec<usize> {
    let threshold = tol.eps() * scale;
    let mut pivots = Vec::new();
    if threshold == 0.0 {
        return pivots;
    }
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.data.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, best_abs) = (r..rows)
            .map(|i| (i, m[i * cols + c].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_abs <= threshold {
            continue;
        }
        if best != r {
            for j in 0..cols {
                m.swap(best * cols + j, r * cols + j);
            }
        }
        let pivot = m[r * cols + c];
        for i in r + 1..rows {
            let factor = m[i * cols + c] / pivot;
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m[r * cols + j];
                m[i * cols + j] -= factor * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Numerical rank, with pivot threshold relative to the largest entry.
pub fn rank(a: &ComplexMatrix, tol: Tolerance) -> usize {
    eliminate(a, tol, a.max_abs()).len()
}

/// Rank with the pivot threshold measured against max(1, largest entry), for
/// matrices such as ρ(g) − I whose entries may be pure rounding noise.
pub(crate) fn rank_unit_scale(a: &ComplexMatrix, tol: Tolerance) -> usize {
    eliminate(a, tol, a.max_abs().max(1.0)).len()
}

/// Indices of a maximal set of linearly independent columns.
pub fn pivot_columns(a: &ComplexMatrix, tol: Tolerance) -> Vec<usize> {
    eliminate(a, tol, a.max_abs())
}

/// Inverse by Gauss–Jordan elimination with partial pivoting.
pub fn inverse(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    a.require_square()?;
    let n = a.rows;
    let threshold = tol.eps() * a.max_abs();
    let mut m = a.data.clone();
    let mut inv = ComplexMatrix::identity(n).data;
    for c in 0..n {
        let (best, best_abs) = (c..n)
            .map(|i| (i, m[i * n + c].norm()))
            .fold((c, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_abs <= threshold {
            return Err(Error::Singular);
        }
        if best != c {
            for j in 0..n {
                m.swap(best * n + j, c * n + j);
                inv.swap(best * n + j, c * n + j);
            }
        }
        let p = m[c * n + c].inv();
        for j in 0..n {
            m[c * n + j] *= p;
            inv[c * n + j] *= p;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let factor = m[i * n + c];
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let (mv, iv) = (m[c * n + j], inv[c * n + j]);
                m[i * n + j] -= factor * mv;
                inv[i * n + j] -= factor * iv;
            }
        }
    }
    Ok(ComplexMatrix { rows: n, cols: n, data: inv })
}

/// The integer nearest to `x`, provided it lies within `tol`.
pub fn snap_integer(x: f64, tol: Tolerance) -> Result<i64> {
    if !x.is_finite() {
        return Err(Error::SnapFailure { value: x, eps: tol.eps() });
    }
    let n = Float::round(x);
    if (x - n).abs() <= tol.eps() && n.abs() < 9.0e15 {
        Ok(n as i64)
    } else {
        Err(Error::SnapFailure { value: x, eps: tol.eps() })
    }
}

/// Snaps a complex number that should be a real integer.
pub(crate) fn snap_complex_integer(z: C64, tol: Tolerance) -> Result<i64> {
    if z.im.abs() > tol.eps() {
        return Err(Error::SnapFailure { value: z.im, eps: tol.eps() });
    }
    snap_integer(z.re, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(rows: usize, cols: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::new(rows, cols, v.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(4.0, -1.0)]).unwrap();
        assert_eq!(mat_mul(&ComplexMatrix::identity(2), &m).unwrap(), m);
    }

    #[test]
    fn s_squared_is_minus_identity() {
        let s = real(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert_eq!(mat_mul(&s, &s).unwrap(), real(2, 2, &[-1.0, 0.0, 0.0, -1.0]));
    }

    #[test]
    fn product_matches_triple_loop() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 - 0.3 * j as f64, (i * j) as f64 * 0.7 - 1.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c((i + 2 * j) as f64 * 0.25, 0.5 - i as f64));
        let p = mat_mul(&a, &b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = c(0.0, 0.0);
                for k in 0..3 {
                    acc += a[(i, k)] * b[(k, j)];
                }
                assert!((acc - p[(i, j)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn product_dimension_mismatch() {
        let err = mat_mul(&ComplexMatrix::zeros(2, 3), &ComplexMatrix::zeros(2, 3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn small_powers() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c((i + j) as f64, 1.0));
        assert_eq!(mat_pow(&m, 0).unwrap(), ComplexMatrix::identity(3));
        assert_eq!(mat_pow(&m, 1).unwrap(), m);
        let z6 = ComplexMatrix::diagonal(&[unit_root(1, 6), unit_root(5, 6), c(1.0, 0.0)]);
        assert!(is_identity(&mat_pow(&z6, 6).unwrap(), Tolerance::default()));
        assert!(mat_pow(&ComplexMatrix::zeros(2, 3), 2).is_err());
    }

    #[test]
    fn identity_checks() {
        let tol = Tolerance::default();
        assert!(is_identity(&ComplexMatrix::identity(4), tol));
        let nudged = ComplexMatrix::identity(2)
            .add_scaled(&ComplexMatrix::from_fn(2, 2, |_, _| c(1.0, 0.0)), c(tol.eps() / 2.0, 0.0))
            .unwrap();
        assert!(is_identity(&nudged, tol));
        assert!(!is_identity(&real(2, 2, &[0.0, -1.0, 1.0, 0.0]), tol));
    }

    #[test]
    fn ranks() {
        let tol = Tolerance::default();
        assert_eq!(rank(&ComplexMatrix::zeros(3, 3), tol), 0);
        assert_eq!(rank(&ComplexMatrix::identity(5), tol), 5);
        assert_eq!(rank(&real(2, 2, &[1.0, 1.0, 1.0, 1.0]), tol), 1);
        assert_eq!(rank(&real(3, 2, &[1.0, 2.0, 2.0, 4.0, 0.0, 1.0]), tol), 2);
        let noise = real(2, 1, &[0.0, -6e-16]);
        assert_eq!(rank(&noise, tol), 1);
        assert_eq!(rank_unit_scale(&noise, tol), 0);
        assert_eq!(rank_unit_scale(&real(2, 2, &[2.0, 0.0, 0.0, 1e-3]), tol), 2);
    }

    #[test]
    fn inverse_of_rotation() {
        let tol = Tolerance::default();
        let s = real(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let si = inverse(&s, tol).unwrap();
        assert!(is_identity(&mat_mul(&s, &si).unwrap(), tol));
        assert_eq!(inverse(&real(2, 2, &[1.0, 1.0, 1.0, 1.0]), tol), Err(Error::Singular));
    }

    #[test]
    fn snapping() {
        let tol = Tolerance::default();
        assert_eq!(snap_integer(2.0000000001, tol), Ok(2));
        assert!(matches!(snap_integer(0.5, tol), Err(Error::SnapFailure { .. })));
        assert_eq!(snap_integer(-1.0 + 1e-12, tol), Ok(-1));
        assert!(snap_integer(f64::NAN, tol).is_err());
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(1e-3).is_err());
        assert!(Tolerance::new(-1e-9).is_err());
        assert_eq!(Tolerance::new(1e-6).unwrap().eps(), 1e-6);
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(ComplexMatrix::new(1, 1, vec![c(f64::INFINITY, 0.0)]), Err(Error::NonFinite));
        assert!(matches!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0)]), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn roots_of_unity_exact_at_quarters() {
        assert_eq!(unit_root(3, 12), c(0.0, 1.0));
        assert_eq!(unit_root(-3, 12), c(0.0, -1.0));
        assert_eq!(unit_root(6, 12), c(-1.0, 0.0));
        assert!((unit_root(1, 12) - c(0.75f64.sqrt(), 0.5)).norm() < 1e-15);
    }
}
