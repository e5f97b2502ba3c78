//! Graph Fourier analysis on top of the normalized Laplacian: the orthonormal
//! eigendecomposition, the Fourier transform pair, spectral convolution and
//! generalized translates, bandlimiting, and the subalgebra test.

use std::ops::Range;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{GbfError, Result};
use crate::graph::Graph;

/// Default absolute gap below which two eigenvalues are treated as equal.
pub const CLUSTER_TOL: f64 = 1e-8;

const SYMMETRY_TOL: f64 = 1e-12;
const SIGN_TIE_TOL: f64 = 1e-12;

/// A real signal on the nodes of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal(pub DVector<f64>);

/// Fourier coefficients of a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector(pub DVector<f64>);

macro_rules! vector_newtype {
    ($t:ident) => {
        impl $t {
            pub fn from_vec(values: Vec<f64>) -> Self {
                Self(DVector::from_vec(values))
            }

            pub fn zeros(n: usize) -> Self {
                Self(DVector::zeros(n))
            }

            /// Standard basis vector with a one at `i`.
            pub fn basis(n: usize, i: usize) -> Self {
                let mut v = DVector::zeros(n);
                v[i] = 1.0;
                Self(v)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn as_slice(&self) -> &[f64] {
                self.0.as_slice()
            }

            pub fn norm(&self) -> f64 {
                self.0.norm()
            }
        }

        impl From<DVector<f64>> for $t {
            fn from(v: DVector<f64>) -> Self {
                Self(v)
            }
        }

        impl From<Vec<f64>> for $t {
            fn from(v: Vec<f64>) -> Self {
                Self::from_vec(v)
            }
        }
    };
}

vector_newtype!(Signal);
vector_newtype!(SpectralVector);

/// Ascending Laplacian eigenvalues with an orthonormal matrix of
/// eigenvectors (column `k` belongs to eigenvalue `k`).
///
/// Each eigenvector is normalized so that its entry of largest magnitude is
/// positive, the lowest index winning ties. Inside a repeated eigenvalue the
/// basis is whatever the solver returns; only basis-invariant quantities are
/// meaningful there.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: DVector<f64>,
    fourier: DMatrix<f64>,
    clusters: Vec<Range<usize>>,
    cluster_tol: f64,
    constant_first: bool,
}

impl Spectrum {
    pub fn of_graph(graph: &Graph) -> Result<Self> {
        Self::from_laplacian(&graph.normalized_laplacian()?)
    }

    pub fn from_laplacian(laplacian: &DMatrix<f64>) -> Result<Self> {
        Self::with_cluster_tolerance(laplacian, CLUSTER_TOL)
    }

    /// Eigendecomposes a symmetric matrix. `cluster_tol` controls which
    /// eigenvalues count as equal.
    pub fn with_cluster_tolerance(laplacian: &DMatrix<f64>, cluster_tol: f64) -> Result<Self> {
        let n = laplacian.nrows();
        if laplacian.ncols() != n {
            return Err(GbfError::DimensionMismatch {
                expected: n,
                found: laplacian.ncols(),
            });
        }
        if n == 0 {
            return Err(GbfError::InvalidParam("empty matrix".into()));
        }
        let deviation = (laplacian - laplacian.transpose()).amax();
        if deviation > SYMMETRY_TOL {
            return Err(GbfError::NotSymmetric { deviation });
        }
        let sym = (laplacian + laplacian.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
        let mut fourier = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let mut col = eig.eigenvectors.column(src).into_owned();
            fix_sign(&mut col);
            fourier.set_column(dst, &col);
        }
        Ok(Self::from_parts(eigenvalues, fourier, cluster_tol))
    }

    fn from_parts(eigenvalues: DVector<f64>, fourier: DMatrix<f64>, cluster_tol: f64) -> Self {
        let n = eigenvalues.len();
        let mut clusters = Vec::new();
        let mut start = 0;
        for k in 1..=n {
            if k == n || eigenvalues[k] - eigenvalues[k - 1] > cluster_tol {
                clusters.push(start..k);
                start = k;
            }
        }
        let first = fourier.column(0);
        let constant_first = first.max() - first.min() <= CLUSTER_TOL;
        Self {
            eigenvalues,
            fourier,
            clusters,
            cluster_tol,
            constant_first,
        }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// The Fourier matrix `U`.
    pub fn fourier(&self) -> &DMatrix<f64> {
        &self.fourier
    }

    pub fn eigenvector(&self, k: usize) -> Signal {
        Signal(self.fourier.column(k).into_owned())
    }

    /// Index ranges of eigenvalue clusters, in ascending order.
    pub fn clusters(&self) -> &[Range<usize>] {
        &self.clusters
    }

    /// Number of distinct eigenvalues.
    pub fn distinct_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_tolerance(&self) -> f64 {
        self.cluster_tol
    }

    /// Representative (mean) value of each eigenvalue cluster.
    pub fn distinct_eigenvalues(&self) -> Vec<f64> {
        self.clusters
            .iter()
            .map(|r| self.eigenvalues.rows(r.start, r.len()).mean())
            .collect()
    }

    /// Indices `k` with `lambda_k` numerically zero.
    pub fn null_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.eigenvalues[k].abs() <= self.cluster_tol)
            .collect()
    }

    /// Whether `u_1` is the constant vector `1/sqrt(n)` (within 1e-8).
    pub fn first_eigenvector_constant(&self) -> bool {
        self.constant_first
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found == self.len() {
            Ok(())
        } else {
            Err(GbfError::DimensionMismatch {
                expected: self.len(),
                found,
            })
        }
    }

    pub fn gft(&self, x: &Signal) -> Result<SpectralVector> {
        self.check_len(x.len())?;
        Ok(SpectralVector(self.fourier.tr_mul(&x.0)))
    }

    pub fn igft(&self, x_hat: &SpectralVector) -> Result<Signal> {
        self.check_len(x_hat.len())?;
        Ok(Signal(&self.fourier * &x_hat.0))
    }

    /// `x * y = U (x_hat ⊙ y_hat)`.
    pub fn convolve(&self, x: &Signal, y: &Signal) -> Result<Signal> {
        let x_hat = self.gft(x)?;
        let y_hat = self.gft(y)?;
        self.igft(&SpectralVector(x_hat.0.component_mul(&y_hat.0)))
    }

    /// Generalized translate `e_i * f`.
    pub fn translate(&self, f: &Signal, i: usize) -> Result<Signal> {
        let f_hat = self.gft(f)?;
        self.translate_spectral(&f_hat, i)
    }

    /// Generalized translate of the function with Fourier coefficients
    /// `f_hat`. Equal to column `i` of `U diag(f_hat) U^T`.
    pub fn translate_spectral(&self, f_hat: &SpectralVector, i: usize) -> Result<Signal> {
        self.check_len(f_hat.len())?;
        if i >= self.len() {
            return Err(GbfError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let row = self.fourier.row(i).transpose();
        Ok(Signal(&self.fourier * f_hat.0.component_mul(&row)))
    }

    /// The convolution unit `f_1 = sum_k u_k`.
    pub fn unity(&self) -> Signal {
        Signal(DVector::from_iterator(
            self.len(),
            self.fourier.row_iter().map(|r| r.sum()),
        ))
    }

    /// Orthogonal projection onto the span of the first `m` eigenvectors.
    pub fn bandlimit_project(&self, m: usize, x: &Signal) -> Result<Signal> {
        self.check_bandwidth(m)?;
        self.check_len(x.len())?;
        let um = self.fourier.columns(0, m);
        Ok(Signal(um * um.tr_mul(&x.0)))
    }

    pub(crate) fn check_bandwidth(&self, m: usize) -> Result<()> {
        if m >= 1 && m <= self.len() {
            Ok(())
        } else {
            Err(GbfError::BandwidthOutOfRange { m, n: self.len() })
        }
    }

    /// True when the Fourier coefficients of `x` agree (within `tol`) inside
    /// every eigenvalue cluster, i.e. `x` is a polynomial in the Laplacian.
    pub fn in_subalgebra(&self, x: &Signal, tol: f64) -> Result<bool> {
        let x_hat = self.gft(x)?;
        Ok(self.spectral_in_subalgebra(&x_hat, tol))
    }

    pub fn spectral_in_subalgebra(&self, x_hat: &SpectralVector, tol: f64) -> bool {
        self.clusters.iter().all(|r| {
            let block = x_hat.0.rows(r.start, r.len());
            block.max() - block.min() <= tol
        })
    }

    /// Operator norm of `y -> x * y`, i.e. `max_k |x_hat_k|`.
    pub fn algebra_norm(&self, x: &Signal) -> Result<f64> {
        Ok(self.gft(x)?.0.amax())
    }

    /// `sum_k |x_hat_k|`.
    pub fn algebra_dual_norm(&self, x: &Signal) -> Result<f64> {
        Ok(self.gft(x)?.0.lp_norm(1))
    }
}

fn fix_sign(col: &mut DVector<f64>) {
    let max = col.amax();
    let lead = col.iter().position(|v| v.abs() >= max - SIGN_TIE_TOL).unwrap_or(0);
    if col[lead] < 0.0 {
        col.neg_mut();
    }
}
