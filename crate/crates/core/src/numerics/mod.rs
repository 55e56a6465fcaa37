//! Complex dense linear algebra substrate.
//!
//! Matrices and vectors are plain immutable values. Heavy factorizations
//! (SVD, Hermitian eigendecomposition) are delegated to
//! `nalgebra`; everything else is done directly on row-major storage.

mod matrix;
mod vector;

pub use matrix::ComplexMatrix;
pub use vector::{distance, inner, norm, pairwise_sum, scaled, UnitVector};

use thiserror::Error;

pub type C64 = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix or vector contains NaN or infinite entries")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unitary: ||M*M - I||_F = {defect:e}")]
    NotUnitary { defect: f64 },
    #[error("matrix is numerically singular (smallest singular value {sigma_min:e})")]
    NearSingular { sigma_min: f64 },
    #[error("input vectors are linearly dependent (Gram determinant {gram_det:e})")]
    DependentInput { gram_det: f64 },
    #[error("vector has zero norm")]
    ZeroVector,
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

/// Numerical thresholds shared by every construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Frobenius distance below which two matrices are the same element.
    pub eq_tol: f64,
    /// Bound on `||U*U - I||_F` for a matrix to count as unitary.
    pub unitarity_tol: f64,
    /// Acceptance threshold for eigenvector residuals.
    pub residual_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eq_tol: 1e-8,
            unitarity_tol: 1e-10,
            residual_tol: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(eq_tol: f64, unitarity_tol: f64, residual_tol: f64) -> Result<Self, NumericsError> {
        let tol = Self {
            eq_tol,
            unitarity_tol,
            residual_tol,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        let all = [self.eq_tol, self.unitarity_tol, self.residual_tol];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(NumericsError::InvalidTolerance(
                "all tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.eq_tol < self.unitarity_tol {
            return Err(NumericsError::InvalidTolerance(format!(
                "eq_tol {:e} must be at least unitarity_tol {:e}",
                self.eq_tol, self.unitarity_tol
            )));
        }
        Ok(())
    }

    /// Same tolerances with a different `eq_tol`.
    pub fn with_eq_tol(self, eq_tol: f64) -> Result<Self, NumericsError> {
        Self::new(eq_tol, self.unitarity_tol, self.residual_tol)
    }
}

/// A square matrix whose unitarity defect `||U*U - I||_F` has been measured
/// and found within tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    mat: ComplexMatrix,
    defect: f64,
}

impl UnitaryMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(n),
            defect: 0.0,
        }
    }

    /// Wraps a matrix produced by an operation that preserves unitarity
    /// exactly up to rounding (products, adjoints, conjugations of unitaries).
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        let defect = unitarity_defect(&mat);
        Self { mat, defect }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Measured `||U*U - I||_F`.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
            defect: self.defect,
        }
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.mat.mul_vec(x)
    }

    /// `W U W*` for another unitary `W`.
    pub fn conjugate_by(&self, w: &UnitaryMatrix) -> Self {
        Self::from_trusted(&(&w.mat * &self.mat) * &w.mat.adjoint())
    }
}

pub fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    let gram = &m.adjoint() * m;
    gram.frobenius_distance(&ComplexMatrix::identity(m.cols()))
}

pub fn certify_unitary(m: ComplexMatrix, tol: &Tolerance) -> Result<UnitaryMatrix, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = unitarity_defect(&m);
    if defect > tol.unitarity_tol {
        return Err(NumericsError::NotUnitary { defect });
    }
    Ok(UnitaryMatrix { mat: m, defect })
}

/// Smallest singular value accepted by [`polar_project`].
pub const POLAR_MIN_SINGULAR_VALUE: f64 = 1e-8;

/// Unitary factor of the polar decomposition, i.e. the nearest unitary
/// matrix in Frobenius distance. Computed as `U V*` from `M = U Σ V*`.
pub fn polar_project(m: &ComplexMatrix) -> Result<UnitaryMatrix, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let svd = m.to_dmatrix().svd(true, true);
    let sigma_min = svd
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if !(sigma_min > POLAR_MIN_SINGULAR_VALUE) {
        return Err(NumericsError::NearSingular { sigma_min });
    }
    let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
        unreachable!("SVD was requested with both singular vector sets");
    };
    Ok(UnitaryMatrix::from_trusted(ComplexMatrix::from_dmatrix(
        &(u * v_t),
    )))
}

/// Classical Gram–Schmidt with one re-orthogonalization pass.
///
/// The output spans the same nested flag of subspaces as the input. The Gram
/// determinant of the input equals the product of the squared residual norms,
/// which is what the dependence test uses.
pub fn gram_schmidt(basis: &[Vec<C64>]) -> Result<Vec<Vec<C64>>, NumericsError> {
    let Some(dim) = basis.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    if let Some(bad) = basis.iter().find(|v| v.len() != dim) {
        return Err(NumericsError::ShapeMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(basis.len());
    let mut gram_det = 1.0;
    for v in basis {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = inner(&r, q);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        let len = norm(&r);
        gram_det *= len * len;
        if !(gram_det > 1e-10) {
            return Err(NumericsError::DependentInput { gram_det });
        }
        out.push(r.into_iter().map(|z| z / len).collect());
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Column `k` of the returned matrix is the eigenvector for eigenvalue `k`.
pub fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    debug_assert!(h.is_square());
    let n = h.rows();
    let sym = h.to_dmatrix();
    // symmetrize away rounding asymmetry before handing it to the solver
    let sym = (&sym + sym.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Orthonormal basis of `{x : A x = 0}` taken from the right singular vectors
/// with singular value at most `threshold`.
pub fn null_space(a: &ComplexMatrix, threshold: f64) -> Vec<Vec<C64>> {
    let (rows, cols) = (a.rows(), a.cols());
    // pad with zero rows so the thin SVD returns a full set of right vectors
    let padded = if rows < cols {
        let mut m = nalgebra::DMatrix::<C64>::zeros(cols, cols);
        m.view_mut((0, 0), (rows, cols)).copy_from(&a.to_dmatrix());
        m
    } else {
        a.to_dmatrix()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    (0..cols)
        .filter(|&k| svd.singular_values[k] <= threshold)
        .map(|k| (0..cols).map(|j| v_t[(k, j)].conj()).collect())
        .collect()
}

/// Gap below which eigenvalues of the Hermitian part share an eigenspace.
const NORMAL_CLUSTER_GAP: f64 = 1e-6;

/// Eigenvalues of a normal (for example unitary) matrix.
///
/// Iterative Schur solvers can stall on unitary input, so this goes through
/// two commuting Hermitian matrices instead: the eigenspaces of the real part
/// `(N + N*)/2` are split by the imaginary part `(N − N*)/2i`, and each
/// eigenvalue is the Rayleigh quotient of the resulting eigenvector.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<C64> {
    debug_assert!(m.is_square());
    let n = m.rows();
    let adj = m.adjoint();
    let re = (m + &adj).scale(C64::new(0.5, 0.0));
    let im = (m - &adj).scale(C64::new(0.0, -0.5));
    let (values, vectors) = hermitian_eigen(&re);
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= NORMAL_CLUSTER_GAP {
            end += 1;
        }
        let cols: Vec<usize> = (start..end).collect();
        let v = vectors.submatrix(&(0..n).collect::<Vec<_>>(), &cols);
        let restricted = &v.adjoint() * &(&im * &v);
        let (_, inner_vectors) = hermitian_eigen(&restricted);
        for k in 0..cols.len() {
            let x = v.mul_vec(&inner_vectors.column(k));
            out.push(inner(&m.mul_vec(&x), &x) / inner(&x, &x));
        }
        start = end;
    }
    out
}
