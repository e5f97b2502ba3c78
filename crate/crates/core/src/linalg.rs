//! Dense Cholesky factorization with pivot diagnostics.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{GbfError, Result};

/// Relative pivot floor: a pivot below `PIVOT_REL * trace(A)` is rejected.
pub const PIVOT_REL: f64 = 1e-14;

/// Lower-triangular factor `L` with `A = L L^T`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    lower: DMatrix<f64>,
    min_pivot: f64,
}

impl Cholesky {
    /// Factors a symmetric matrix. Only the lower triangle is read.
    ///
    /// Fails with [`GbfError::IllConditioned`] when a squared pivot falls
    /// below `PIVOT_REL * trace(A)`; the reported condition estimate comes
    /// from the eigenvalues of `A`.
    pub fn factor(a: &DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(GbfError::DimensionMismatch {
                expected: n,
                found: a.ncols(),
            });
        }
        let trace = a.trace();
        let threshold = PIVOT_REL * trace.abs().max(f64::MIN_POSITIVE);
        let mut l = DMatrix::<f64>::zeros(n, n);
        let mut min_pivot = f64::INFINITY;
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            min_pivot = min_pivot.min(d);
            if d.is_nan() || d <= threshold {
                return Err(GbfError::IllConditioned {
                    pivot: d,
                    threshold,
                    condition_estimate: condition_number(a),
                });
            }
            let dj = d.sqrt();
            l[(j, j)] = dj;
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / dj;
            }
        }
        Ok(Self { lower: l, min_pivot })
    }

    pub fn lower(&self) -> &DMatrix<f64> {
        &self.lower
    }

    /// Smallest squared pivot met during the factorization.
    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        let n = self.lower.nrows();
        let l = &self.lower;
        let mut y = b.clone();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l[(k, i)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        y
    }

    pub fn solve_matrix(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(b.nrows(), b.ncols());
        for (j, col) in b.column_iter().enumerate() {
            out.set_column(j, &self.solve(&col.into_owned()));
        }
        out
    }

    pub fn inverse(&self) -> DMatrix<f64> {
        let n = self.lower.nrows();
        self.solve_matrix(&DMatrix::identity(n, n))
    }
}

/// 2-norm condition number of a symmetric matrix, `inf` when singular.
pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 1.0;
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym).eigenvalues;
    let max = eig.amax();
    let min = eig.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Spectral norm of a symmetric matrix.
pub fn symmetric_norm(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    SymmetricEigen::new((a + a.transpose()) * 0.5).eigenvalues.amax()
}
