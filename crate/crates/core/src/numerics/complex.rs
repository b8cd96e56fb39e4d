//! Dense complex vectors and row-major matrices.

use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::{Error, Result};

/// A non-empty vector of complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("vector must have at least one entry"));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("vector entries must be finite"));
        }
        Ok(Self(entries))
    }

    /// Builds a vector from real entries.
    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Complex64>) -> Self {
        debug_assert!(!entries.is_empty());
        Self(entries)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|z| z * factor).collect())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|z| z.conj()).collect())
    }

    /// Entries at `indices`, in that order.
    pub fn gather(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("index set must be non-empty"));
        }
        let mut out = Vec::with_capacity(indices.len());
        for &i in indices {
            out.push(*self.0.get(i).ok_or(Error::InvalidArgument("index out of range"))?);
        }
        Ok(Self(out))
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// `Σ_i a_i · conj(b_i)`, i.e. `aᵀ b*`.
///
/// The conjugate sits on the second argument so that `h̃ᵀ w` with an MRT beam
/// `w = h̃* / ‖h̃‖` is written `inner_product_t(h̃, h̃) / ‖h̃‖`.
pub fn inner_product_t(a: &ComplexVector, b_conjugated: &ComplexVector) -> Result<Complex64> {
    if a.len() != b_conjugated.len() {
        return Err(Error::Dimension { expected: a.len(), actual: b_conjugated.len() });
    }
    Ok(dot_conj(a.as_slice(), b_conjugated.as_slice()))
}

#[inline]
pub(crate) fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x * y.conj())
}

/// Plain transpose product `Σ_i a_i · b_i` (no conjugation).
#[inline]
pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x * y)
}

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, actual: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite"));
        }
        Ok(Self { rows, cols, data })
    }

    /// Stacks column vectors of equal length side by side.
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let first = columns.first().ok_or(Error::InvalidArgument("need at least one column"))?;
        let rows = first.len();
        let cols = columns.len();
        let mut data = alloc::vec![Complex64::new(0.0, 0.0); rows * cols];
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension { expected: rows, actual: col.len() });
            }
            for (r, z) in col.as_slice().iter().enumerate() {
                data[r * cols + c] = *z;
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_raw_unchecked(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
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
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_row_major(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, col: usize) -> Result<ComplexVector> {
        if col >= self.cols {
            return Err(Error::InvalidArgument("column index out of range"));
        }
        Ok(ComplexVector(self.column_iter(col).collect()))
    }

    pub fn columns(&self) -> Vec<ComplexVector> {
        (0..self.cols).map(|c| ComplexVector(self.column_iter(c).collect())).collect()
    }

    fn column_iter(&self, col: usize) -> impl Iterator<Item = Complex64> + '_ {
        self.data.iter().skip(col).step_by(self.cols).copied()
    }

    /// Rows at `indices`, in that order.
    pub fn gather_rows(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("index set must be non-empty"));
        }
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            if i >= self.rows {
                return Err(Error::InvalidArgument("row index out of range"));
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(Self { rows: indices.len(), cols: self.cols, data })
    }

    /// `selfᵀ · other`, the `cols × other.cols` product used for `H̃ᵀ W`.
    pub fn transpose_mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension { expected: self.rows, actual: other.rows });
        }
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); self.cols * other.cols];
        for r in 0..self.rows {
            let a = self.row(r);
            let b = other.row(r);
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    out[i * other.cols + j] += ai * bj;
                }
            }
        }
        Ok(Self { rows: self.cols, cols: other.cols, data: out })
    }
}
