use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use super::{NumericsError, C64};

/// Dense complex matrix in row-major order.
///
/// Values are immutable once built: every operation returns a fresh matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, NumericsError> {
        if rows == 0 || cols == 0 {
            return Err(NumericsError::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(NumericsError::ShapeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(NumericsError::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, NumericsError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(NumericsError::ShapeMismatch {
                expected: n_cols,
                found: bad.len(),
            });
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self, NumericsError> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(NumericsError::ShapeMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        Self::new(
            rows,
            cols,
            (0..rows * cols)
                .map(|k| columns[k % cols][k / cols])
                .collect(),
        )
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| C64::new(0.0, 0.0))
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Permutation matrix `P` with `P e_j = e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| {
            if perm[j] == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius inner product `tr(B* A)`.
    pub fn frobenius_inner(&self, other: &Self) -> C64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumericsError> {
        if self.cols != other.rows {
            return Err(NumericsError::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut data = vec![C64::new(0.0, 0.0); n * p];
        for i in 0..n {
            let out = &mut data[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(&other.data[k * p..(k + 1) * p]) {
                    *o += a * b;
                }
            }
        }
        Self {
            rows: n,
            cols: p,
            data,
        }
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn to_dmatrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_dmatrix(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
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

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
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

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes_and_non_finite() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(NumericsError::ShapeMismatch {
                expected: 4,
                found: 3
            })
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 2, vec![]),
            Err(NumericsError::EmptyMatrix)
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(NumericsError::NonFinite)
        ));
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(0.0, 2.0)],
            vec![c(3.0, 0.0), c(0.0, -1.0)],
        ])
        .unwrap();
        let prod = &a * &ComplexMatrix::identity(2);
        assert_eq!(prod, a);
        let aa = &a.adjoint() * &a;
        // A*A is Hermitian
        assert!(aa.frobenius_distance(&aa.adjoint()) < 1e-15);
        assert_eq!(a.adjoint().get(0, 1), c(3.0, 0.0));
        assert_eq!(a.adjoint().get(1, 0), c(0.0, -2.0));
    }

    #[test]
    fn permutation_matrix_moves_basis_vectors() {
        let p = ComplexMatrix::permutation(&[1, 2, 0]);
        let e0 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(p.mul_vec(&e0), vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn columns_round_trip() {
        let cols = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 1.0), c(0.0, 2.0)],
        ];
        let m = ComplexMatrix::from_columns(&cols).unwrap();
        assert_eq!(m.column(1), cols[1]);
        assert_eq!(m.get(1, 0), c(2.0, 0.0));
    }
}
