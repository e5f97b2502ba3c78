//! Kernel interpolation with a positive definite GBF, the native space
//! geometry of `K_f`, Lagrange bases and the power function.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GbfError, Result};
use crate::gbf::{Gbf, KernelMatrix};
use crate::linalg::{condition_number, Cholesky};
use crate::spectral::{Signal, Spectrum};

/// Ordered set of distinct sampling nodes `W = {v_{j_1}, ..., v_{j_N}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingSet {
    indices: Vec<usize>,
    n: usize,
}

impl SamplingSet {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(GbfError::InvalidSampling("sampling set is empty".into()));
        }
        let mut seen = vec![false; n];
        for &j in &indices {
            if j >= n {
                return Err(GbfError::IndexOutOfRange { index: j, len: n });
            }
            if seen[j] {
                return Err(GbfError::InvalidSampling(format!("node {j} appears twice")));
            }
            seen[j] = true;
        }
        Ok(Self { indices, n })
    }

    pub fn all(n: usize) -> Result<Self> {
        Self::new((0..n).collect(), n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indices.contains(&v)
    }

    /// Membership mask over all `n` nodes.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &j in &self.indices {
            m[j] = true;
        }
        m
    }

    /// Values of `x` at the sampling nodes, in sampling order.
    pub fn restrict(&self, x: &Signal) -> Result<DVector<f64>> {
        self.check_len(x.len())?;
        Ok(DVector::from_iterator(self.len(), self.indices.iter().map(|&j| x.0[j])))
    }

    /// Rows of `m` at the sampling nodes.
    pub fn rows(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        m.select_rows(self.indices.iter())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(GbfError::DimensionMismatch {
                expected: self.n,
                found: len,
            });
        }
        Ok(())
    }
}

/// `K_{f,W}`, the principal submatrix of the kernel at the sampling nodes.
pub fn kernel_submatrix(kernel: &KernelMatrix, w: &SamplingSet) -> Result<DMatrix<f64>> {
    w.check_len(kernel.matrix.nrows())?;
    Ok(kernel
        .matrix
        .select_rows(w.indices.iter())
        .select_columns(w.indices.iter()))
}

/// Spectral form of `K_{f,W}`: `E diag(f_hat) E^T` with `E` the rows of `U`
/// at `W`.
fn spectral_submatrix(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> DMatrix<f64> {
    let e = w.rows(spectrum.fourier());
    let mut ef = e.clone();
    for (k, mut col) in ef.column_iter_mut().enumerate() {
        col *= gbf.coeffs()[k];
    }
    let k = ef * e.transpose();
    (&k + k.transpose()) * 0.5
}

/// `U diag(f_hat) E^T`: column `k` is the translate of `f` to `w_k`.
fn translates_at(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> DMatrix<f64> {
    let u = spectrum.fourier();
    let mut uf = u.clone();
    for (k, mut col) in uf.column_iter_mut().enumerate() {
        col *= gbf.coeffs()[k];
    }
    uf * w.rows(u).transpose()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationDiagnostics {
    pub condition_estimate: f64,
    pub residual_max: f64,
}

#[derive(Debug, Clone)]
pub struct Interpolant {
    pub coefficients: DVector<f64>,
    pub signal: Signal,
    pub sampling: SamplingSet,
    pub gbf: String,
    pub diagnostics: InterpolationDiagnostics,
}

fn check_inputs(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> Result<()> {
    if gbf.len() != spectrum.len() {
        return Err(GbfError::DimensionMismatch {
            expected: spectrum.len(),
            found: gbf.len(),
        });
    }
    w.check_len(spectrum.len())?;
    gbf.require_pd()
}

/// Solves `K_{f,W} c = samples` and evaluates `I_W x = sum_k c_k C_{e_{j_k}} f`.
pub fn interpolate(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet, samples: &DVector<f64>) -> Result<Interpolant> {
    check_inputs(spectrum, gbf, w)?;
    if samples.len() != w.len() {
        return Err(GbfError::DimensionMismatch {
            expected: w.len(),
            found: samples.len(),
        });
    }
    let kw = spectral_submatrix(spectrum, gbf, w);
    let chol = Cholesky::factor(&kw)?;
    let c = chol.solve(samples);
    let signal = translates_at(spectrum, gbf, w) * &c;
    let residual_max = w
        .indices
        .iter()
        .zip(samples.iter())
        .map(|(&j, &s)| (signal[j] - s).abs())
        .fold(0.0, f64::max);
    Ok(Interpolant {
        coefficients: c,
        signal: Signal(signal),
        sampling: w.clone(),
        gbf: gbf.descriptor().to_string(),
        diagnostics: InterpolationDiagnostics {
            condition_estimate: condition_number(&kw),
            residual_max,
        },
    })
}

/// `<x, y>_{K_f} = sum_k x_hat_k y_hat_k / f_hat_k`.
pub fn native_inner(spectrum: &Spectrum, gbf: &Gbf, x: &Signal, y: &Signal) -> Result<f64> {
    gbf.require_pd()?;
    let xh = spectrum.gft(x)?;
    let yh = spectrum.gft(y)?;
    Ok(xh
        .0
        .iter()
        .zip(yh.0.iter())
        .zip(gbf.coeffs().iter())
        .map(|((a, b), f)| a * b / f)
        .sum())
}

pub fn native_norm(spectrum: &Spectrum, gbf: &Gbf, x: &Signal) -> Result<f64> {
    Ok(native_inner(spectrum, gbf, x, x)?.max(0.0).sqrt())
}

/// Columns of the `n x N` matrix `U diag(f_hat) E^T K_W^{-1}`; column `k`
/// is the Lagrange function `l_k` with `l_k(w_i) = delta_ki`.
pub fn lagrange_matrix(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> Result<DMatrix<f64>> {
    check_inputs(spectrum, gbf, w)?;
    let chol = Cholesky::factor(&spectral_submatrix(spectrum, gbf, w))?;
    // (K_W^{-1} T^T)^T with T the translate matrix; K_W is symmetric.
    let t = translates_at(spectrum, gbf, w);
    Ok(chol.solve_matrix(&t.transpose()).transpose())
}

pub fn lagrange_basis(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> Result<Vec<Signal>> {
    let l = lagrange_matrix(spectrum, gbf, w)?;
    Ok(l.column_iter().map(|c| Signal(c.into_owned())).collect())
}

/// `P_W(v) = || K_f(., v) - sum_k l_k(v) K_f(., w_k) ||_{K_f}`, evaluated in
/// the spectral domain. Exactly zero on `W`.
pub fn power_function(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> Result<DVector<f64>> {
    let lag = lagrange_matrix(spectrum, gbf, w)?;
    let u = spectrum.fourier();
    let e = w.rows(u);
    let r = u - &lag * e;
    let mask = w.mask();
    let f = gbf.coeffs();
    Ok(DVector::from_fn(spectrum.len(), |v, _| {
        if mask[v] {
            return 0.0;
        }
        let p2: f64 = (0..r.ncols()).map(|l| f[l] * r[(v, l)] * r[(v, l)]).sum();
        p2.max(0.0).sqrt()
    }))
}

/// Minimum-norm least squares fit in the band `B_M`: the `x` in
/// `span{u_1, ..., u_M}` minimizing `|| x|_W - samples ||`, and among
/// minimizers the one of least norm.
pub fn bandlimited_least_squares(
    spectrum: &Spectrum,
    w: &SamplingSet,
    samples: &DVector<f64>,
    m: usize,
) -> Result<Signal> {
    spectrum.check_bandwidth(m)?;
    w.check_len(spectrum.len())?;
    if samples.len() != w.len() {
        return Err(GbfError::DimensionMismatch {
            expected: w.len(),
            found: samples.len(),
        });
    }
    let um = spectrum.fourier().columns(0, m).into_owned();
    let e = w.rows(&um);
    let svd = e.svd(true, true);
    let tol = svd.singular_values.max() * 1e-12 * (w.len().max(m) as f64);
    let coeffs = svd
        .solve(samples, tol)
        .map_err(|msg| GbfError::InvalidParam(msg.to_string()))?;
    Ok(Signal(um * coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbf::{diffusion_gbf, kernel_matrix, laplacian_gbf, unity_gbf, variational_spline_gbf};
    use crate::graph::{generate_graph, GraphKind};
    use approx::assert_abs_diff_eq;

    fn spectrum(kind: GraphKind) -> Spectrum {
        Spectrum::of_graph(&generate_graph(&kind).unwrap().graph).unwrap()
    }

    fn p2() -> Spectrum {
        spectrum(GraphKind::Path { n: 2 })
    }

    #[test]
    fn sampling_set_validation() {
        assert!(SamplingSet::new(vec![], 3).is_err());
        assert!(matches!(
            SamplingSet::new(vec![3], 3),
            Err(GbfError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            SamplingSet::new(vec![1, 1], 3),
            Err(GbfError::InvalidSampling(_))
        ));
        assert_eq!(SamplingSet::all(3).unwrap().indices(), &[0, 1, 2]);
    }

    #[test]
    fn submatrix_examples() {
        let s = spectrum(GraphKind::Cycle { n: 6 });
        let k = kernel_matrix(&s, &diffusion_gbf(&s, 1.0).unwrap()).unwrap();
        assert_eq!(kernel_submatrix(&k, &SamplingSet::all(6).unwrap()).unwrap(), k.matrix);
        let w = SamplingSet::new(vec![4, 1, 2], 6).unwrap();
        let ku = kernel_matrix(&s, &unity_gbf(&s)).unwrap();
        assert_abs_diff_eq!(
            kernel_submatrix(&ku, &w).unwrap(),
            DMatrix::identity(3, 3),
            epsilon = 1e-13
        );

        let p = p2();
        let k = kernel_matrix(&p, &diffusion_gbf(&p, 0.5).unwrap()).unwrap();
        let sub = kernel_submatrix(&k, &SamplingSet::new(vec![0], 2).unwrap()).unwrap();
        assert_abs_diff_eq!(sub[(0, 0)], 0.68394, epsilon = 5e-6);
        let g = diffusion_gbf(&s, 1.0).unwrap();
        let kd = kernel_matrix(&s, &g).unwrap();
        assert_abs_diff_eq!(
            kernel_submatrix(&kd, &w).unwrap(),
            spectral_submatrix(&s, &g, &w),
            epsilon = 1e-14
        );
    }

    #[test]
    fn interpolation_examples() {
        let s = spectrum(GraphKind::Grid { rows: 3, cols: 3 });
        let w = SamplingSet::new(vec![7, 2, 4], 9).unwrap();
        let samples = DVector::from_vec(vec![1.5, -2.0, 0.25]);
        let it = interpolate(&s, &unity_gbf(&s), &w, &samples).unwrap();
        let mut expected = DVector::zeros(9);
        expected[7] = 1.5;
        expected[2] = -2.0;
        expected[4] = 0.25;
        assert_abs_diff_eq!(it.signal.0, expected, epsilon = 1e-13);

        let g = variational_spline_gbf(&s, 0.2, 2.0).unwrap();
        let t = s.translate_spectral(&g.spectral(), 7).unwrap();
        let it = interpolate(&s, &g, &w, &w.restrict(&t).unwrap()).unwrap();
        assert_abs_diff_eq!(it.coefficients, DVector::from_vec(vec![1.0, 0.0, 0.0]), epsilon = 1e-10);
        assert_abs_diff_eq!(it.signal.0, t.0, epsilon = 1e-12);

        let p = p2();
        let it = interpolate(
            &p,
            &diffusion_gbf(&p, 0.5).unwrap(),
            &SamplingSet::new(vec![0], 2).unwrap(),
            &DVector::from_vec(vec![1.0]),
        )
        .unwrap();
        assert_abs_diff_eq!(it.coefficients[0], 1.46212, epsilon = 5e-5);
        assert_abs_diff_eq!(it.signal.0, DVector::from_vec(vec![1.0, 0.46212]), epsilon = 5e-6);
    }

    #[test]
    fn refuses_non_pd_and_singular() {
        let s = spectrum(GraphKind::Path { n: 4 });
        let w = SamplingSet::new(vec![0, 1], 4).unwrap();
        let samples = DVector::from_vec(vec![1.0, 2.0]);
        assert!(matches!(
            interpolate(&s, &laplacian_gbf(&s), &w, &samples),
            Err(GbfError::NotPd { .. })
        ));
        // Coefficients that underflow the strictness tolerance are refused up
        // front; the pivot guard is exercised in linalg.
        let g = diffusion_gbf(&s, 200.0).unwrap();
        assert!(matches!(
            interpolate(&s, &g, &SamplingSet::all(4).unwrap(), &DVector::from_element(4, 1.0)),
            Err(GbfError::NotPd { .. })
        ));
        let g = diffusion_gbf(&s, 8.0).unwrap();
        let it = interpolate(&s, &g, &SamplingSet::all(4).unwrap(), &DVector::from_element(4, 1.0)).unwrap();
        assert!(it.diagnostics.condition_estimate > 1e6);
    }

    #[test]
    fn native_norm_examples() {
        let s = spectrum(GraphKind::Cycle { n: 5 });
        let x = Signal::from_vec(vec![1.0, -2.0, 0.5, 3.0, 0.0]);
        assert_abs_diff_eq!(native_norm(&s, &unity_gbf(&s), &x).unwrap(), x.norm(), epsilon = 1e-13);
        let g = variational_spline_gbf(&s, 0.5, 1.0).unwrap();
        for k in 0..5 {
            let nk = native_norm(&s, &g, &s.eigenvector(k)).unwrap();
            assert_abs_diff_eq!(nk, 1.0 / g.coeffs()[k].sqrt(), epsilon = 1e-12);
        }
        assert!(native_norm(&s, &laplacian_gbf(&s), &x).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let s = spectrum(GraphKind::Path { n: 5 });
        let w = SamplingSet::new(vec![3, 0], 5).unwrap();
        let l = lagrange_basis(&s, &unity_gbf(&s), &w).unwrap();
        assert_abs_diff_eq!(l[0].0, Signal::basis(5, 3).0, epsilon = 1e-13);
        assert_abs_diff_eq!(l[1].0, Signal::basis(5, 0).0, epsilon = 1e-13);

        let g = diffusion_gbf(&s, 1.0).unwrap();
        let all = lagrange_basis(&s, &g, &SamplingSet::all(5).unwrap()).unwrap();
        for (k, lk) in all.iter().enumerate() {
            assert_abs_diff_eq!(lk.0, Signal::basis(5, k).0, epsilon = 1e-10);
        }

        let p = p2();
        let l = lagrange_basis(
            &p,
            &diffusion_gbf(&p, 0.5).unwrap(),
            &SamplingSet::new(vec![0], 2).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(l[0].0, DVector::from_vec(vec![1.0, 0.46212]), epsilon = 5e-6);
    }

    #[test]
    fn power_function_examples() {
        let p = p2();
        let g = diffusion_gbf(&p, 0.5).unwrap();
        let w = SamplingSet::new(vec![0], 2).unwrap();
        let pf = power_function(&p, &g, &w).unwrap();
        assert_eq!(pf[0], 0.0);
        // Hand computation: K(v2,v2) - K(v1,v2)^2 / K(v1,v1).
        let k = kernel_matrix(&p, &g).unwrap().matrix;
        let by_hand = k[(1, 1)] - k[(0, 1)] * k[(0, 1)] / k[(0, 0)];
        assert_abs_diff_eq!(pf[1] * pf[1], by_hand, epsilon = 1e-14);
        assert_abs_diff_eq!(pf[1] * pf[1], 0.68394 - 0.46212 * 0.31606, epsilon = 2e-5);

        let s = spectrum(GraphKind::Cycle { n: 6 });
        let g = diffusion_gbf(&s, 1.0).unwrap();
        assert_eq!(
            power_function(&s, &g, &SamplingSet::all(6).unwrap()).unwrap(),
            DVector::zeros(6)
        );
    }

    #[test]
    fn bandlimited_least_squares_recovers_band() {
        let s = spectrum(GraphKind::Grid { rows: 3, cols: 4 });
        let x = Signal(s.fourier().column(0) * 0.7 - s.fourier().column(2) * 1.3);
        let w = SamplingSet::new(vec![0, 3, 5, 8, 11], 12).unwrap();
        let y = bandlimited_least_squares(&s, &w, &w.restrict(&x).unwrap(), 3).unwrap();
        assert_abs_diff_eq!(y.0, x.0, epsilon = 1e-10);
    }
}
