use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense `dim × dim` real matrix stored row-major.
///
/// Entries are finite at construction. Arithmetic does not re-check finiteness; a result
/// that overflows carries `inf` until a constructor or decomposition rejects it.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, T::one())
    }

    /// `c·I`.
    pub fn scalar(dim: usize, c: T) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), dim });
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(dim, data)
    }

    /// Builds from row-major data of length `dim²`.
    pub fn from_vec(dim: usize, data: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: k / dim, col: k % dim });
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.dim).map(<[T]>::to_vec).collect()
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Largest `|A_ij − A_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// `max|A_ij − A_ji| ≤ 1e-12·max(1, max|A_ij|)`.
    pub fn is_symmetric(&self) -> bool {
        self.asymmetry() <= T::tol(1e-12) * T::one().max(self.max_abs())
    }

    /// `(A + Aᵀ)/2`, used to scrub rounding from products that are symmetric in exact arithmetic.
    pub fn symmetrized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |i, j| half * (self[(i, j)] + self[(j, i)]))
    }

    pub fn scale(&self, c: T) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&x| c * x).collect() }
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: T) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m[(i, i)] = m[(i, i)] + c;
        }
        m
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dim, "matvec dimension");
        self.data.chunks(self.dim).map(|r| r.iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    /// `⟨A x, x⟩`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        self.matvec(x).iter().zip(x).map(|(&a, &b)| a * b).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::NotSymmetric { asymmetry: self.asymmetry().as_f64() })
        }
    }

    /// Converts the scalar type, e.g. `f64 → f32`.
    pub fn cast<U: Real>(&self) -> SquareMatrix<U> {
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| U::lit(x.as_f64())).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.dim, rhs.dim, "elementwise dimension");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Add for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn add(self, rhs: Self) -> SquareMatrix<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn sub(self, rhs: Self) -> SquareMatrix<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Real> Mul for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: Self) -> SquareMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn neg(self) -> SquareMatrix<T> {
        self.scale(-T::one())
    }
}

impl<T: fmt::Debug> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.dim)).finish()
    }
}

impl<T: Real> fmt::Display for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(6);
        for (i, row) in self.data.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.*}", prec, x)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Real + Serialize> Serialize for SquareMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.data.chunks(self.dim))
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for SquareMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        SquareMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// Dense `rows × cols` matrix, used for isometries `V: ℝᵏ → ℝⁿ` in compressions.
#[derive(Clone, Debug, PartialEq)]
pub struct RectMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> RectMatrix<T> {
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::Empty);
        }
        let cols = rows[0].as_ref().len();
        if cols == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(nrows * cols);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::NotSquare { row, len: r.len(), dim: cols });
            }
            if let Some(col) = r.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: nrows, cols, data })
    }

    /// First `cols` columns of a square matrix.
    pub fn leading_columns(m: &SquareMatrix<T>, cols: usize) -> Self {
        let rows = m.dim();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            data.extend_from_slice(&m.row(i)[..cols]);
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    /// `VᵀXV` for square `X` of size `rows`.
    pub fn congruence(&self, x: &SquareMatrix<T>) -> SquareMatrix<T> {
        let (n, k) = (self.rows, self.cols);
        // XV, n × k
        let mut xv = vec![T::zero(); n * k];
        for i in 0..n {
            for l in 0..n {
                let a = x[(i, l)];
                for j in 0..k {
                    xv[i * k + j] = xv[i * k + j] + a * self.get(l, j);
                }
            }
        }
        SquareMatrix::from_fn(k, |i, j| (0..n).map(|l| self.get(l, i) * xv[l * k + j]).sum())
    }

    /// `VᵀV`.
    pub fn gram(&self) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.cols, |i, j| {
            (0..self.rows).map(|l| self.get(l, i) * self.get(l, j)).sum()
        })
    }
}

impl<T: Real + Serialize> Serialize for RectMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.data.chunks(self.cols))
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for RectMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        RectMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}
