//! Graph basis functions (GBFs) stored by their Fourier coefficients.
//!
//! A GBF `f` induces the kernel `K_f = U diag(f_hat) U^T`, whose columns are
//! the generalized translates of `f`. Positive definiteness of that kernel
//! is read off the sign of the coefficients; the Hankel moment test gives an
//! independent route for functions in the Laplacian subalgebra.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{GbfError, Result};
use crate::spectral::{Signal, SpectralVector, Spectrum};

/// Relative strictness tolerance `1e-10 * max(1, max |f_hat_k|)`.
pub fn default_pd_tolerance(coeffs: &DVector<f64>) -> f64 {
    1e-10 * coeffs.amax().max(1.0)
}

/// Definiteness class of a GBF.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    PositiveDefinite,
    PositiveSemidefinite,
    /// Positive definite on the span of the eigenvectors listed in `support`
    /// (0-based frequency indices).
    ConditionallyPositiveDefinite {
        support: Vec<usize>,
    },
    Indefinite,
}

impl Classification {
    pub fn is_positive_definite(&self) -> bool {
        matches!(self, Classification::PositiveDefinite)
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            Classification::PositiveDefinite => "PD",
            Classification::PositiveSemidefinite => "PSD",
            Classification::ConditionallyPositiveDefinite { .. } => "CPD",
            Classification::Indefinite => "Indefinite",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::ConditionallyPositiveDefinite { support } => {
                write!(f, "CPD on {} frequencies", support.len())
            }
            other => f.write_str(other.short_name()),
        }
    }
}

/// Classifies Fourier coefficients with strictness tolerance `eps`:
///
/// * `PositiveDefinite` when every coefficient exceeds `eps`;
/// * `ConditionallyPositiveDefinite` when the coefficients exceed `eps`
///   exactly off the Laplacian null space and are `<= eps` on it (the
///   Laplacian and its pseudo-inverse powers are the canonical cases);
/// * `PositiveSemidefinite` when no coefficient is below `-eps`;
/// * `Indefinite` otherwise.
pub fn classify(spectrum: &Spectrum, coeffs: &DVector<f64>, eps: f64) -> Classification {
    if coeffs.iter().all(|&c| c > eps) {
        return Classification::PositiveDefinite;
    }
    let null = spectrum.null_indices();
    let mut is_null = vec![false; coeffs.len()];
    for &k in &null {
        if k < is_null.len() {
            is_null[k] = true;
        }
    }
    let null_block = !null.is_empty()
        && coeffs
            .iter()
            .enumerate()
            .all(|(k, &c)| if is_null[k] { c <= eps } else { c > eps });
    if null_block {
        let support = (0..coeffs.len()).filter(|&k| !is_null[k]).collect();
        return Classification::ConditionallyPositiveDefinite { support };
    }
    if coeffs.iter().all(|&c| c > -eps) {
        Classification::PositiveSemidefinite
    } else {
        Classification::Indefinite
    }
}

/// Definiteness of the assembled kernel, as seen through its eigenvalues.
/// Used to cross-check [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Pd,
    Psd,
    Neither,
}

impl Classification {
    /// Collapses the classification onto PD / PSD / neither, given the
    /// coefficients it was computed from.
    pub fn definiteness(&self, coeffs: &DVector<f64>, eps: f64) -> Definiteness {
        match self {
            Classification::PositiveDefinite => Definiteness::Pd,
            Classification::PositiveSemidefinite => Definiteness::Psd,
            Classification::ConditionallyPositiveDefinite { .. } => {
                if coeffs.iter().all(|&c| c > -eps) {
                    Definiteness::Psd
                } else {
                    Definiteness::Neither
                }
            }
            Classification::Indefinite => Definiteness::Neither,
        }
    }
}

/// A graph basis function: Fourier coefficients, their classification and a
/// provenance string such as `diffusion:t=10`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gbf {
    coeffs: DVector<f64>,
    classification: Classification,
    descriptor: String,
}

impl Gbf {
    /// Classifies `coeffs` with the default tolerance.
    pub fn from_coeffs(spectrum: &Spectrum, coeffs: DVector<f64>, descriptor: impl Into<String>) -> Result<Self> {
        if coeffs.len() != spectrum.len() {
            return Err(GbfError::DimensionMismatch {
                expected: spectrum.len(),
                found: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(GbfError::InvalidParam("non-finite Fourier coefficient".into()));
        }
        let eps = default_pd_tolerance(&coeffs);
        let classification = classify(spectrum, &coeffs, eps);
        Ok(Self {
            coeffs,
            classification,
            descriptor: descriptor.into(),
        })
    }

    /// A GBF declared conditionally positive definite on the frequencies in
    /// `support`. Every coefficient in `support` must exceed the default
    /// tolerance.
    pub fn conditionally_pd(
        spectrum: &Spectrum,
        coeffs: DVector<f64>,
        support: Vec<usize>,
        descriptor: impl Into<String>,
    ) -> Result<Self> {
        let mut gbf = Self::from_coeffs(spectrum, coeffs, descriptor)?;
        let eps = default_pd_tolerance(&gbf.coeffs);
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        for &k in &support {
            if k >= gbf.coeffs.len() {
                return Err(GbfError::IndexOutOfRange {
                    index: k,
                    len: gbf.coeffs.len(),
                });
            }
            if gbf.coeffs[k] <= eps {
                return Err(GbfError::InvalidParam(format!(
                    "coefficient {k} is not positive on the declared support"
                )));
            }
        }
        if support.len() < gbf.coeffs.len() {
            gbf.classification = Classification::ConditionallyPositiveDefinite { support };
        }
        Ok(gbf)
    }

    /// Treats the signal `f` as a GBF.
    pub fn from_signal(spectrum: &Spectrum, f: &Signal, descriptor: impl Into<String>) -> Result<Self> {
        Self::from_coeffs(spectrum, spectrum.gft(f)?.0, descriptor)
    }

    pub fn coeffs(&self) -> &DVector<f64> {
        &self.coeffs
    }

    pub fn spectral(&self) -> SpectralVector {
        SpectralVector(self.coeffs.clone())
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Node-domain representative `U f_hat`.
    pub fn signal(&self, spectrum: &Spectrum) -> Result<Signal> {
        spectrum.igft(&self.spectral())
    }

    pub fn min_coeff(&self) -> f64 {
        self.coeffs.min()
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.max()
    }

    pub(crate) fn require_pd(&self) -> Result<()> {
        if self.classification.is_positive_definite() {
            Ok(())
        } else {
            Err(GbfError::NotPd {
                classification: self.classification.to_string(),
            })
        }
    }
}

/// The kernel matrix `K_f = U diag(f_hat) U^T` of a GBF.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub matrix: DMatrix<f64>,
    pub source: String,
}

pub fn kernel_matrix(spectrum: &Spectrum, gbf: &Gbf) -> Result<KernelMatrix> {
    if gbf.len() != spectrum.len() {
        return Err(GbfError::DimensionMismatch {
            expected: spectrum.len(),
            found: gbf.len(),
        });
    }
    let u = spectrum.fourier();
    let mut scaled = u.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= gbf.coeffs[k];
    }
    let mut matrix = scaled * u.transpose();
    let n = matrix.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (matrix[(i, j)] + matrix[(j, i)]);
            matrix[(i, j)] = v;
            matrix[(j, i)] = v;
        }
    }
    Ok(KernelMatrix {
        matrix,
        source: gbf.descriptor.clone(),
    })
}

/// Hankel matrix of the moments `f_1^T L^j f = sum_k lambda_k^j f_hat_k`,
/// `j = 0..2r-2`, with `0^0 = 1`.
pub fn hankel_moment_matrix(spectrum: &Spectrum, f: &Signal, r: usize) -> Result<DMatrix<f64>> {
    if r == 0 {
        return Err(GbfError::InvalidParam("Hankel size must be at least 1".into()));
    }
    let f_hat = spectrum.gft(f)?;
    let lambdas = spectrum.eigenvalues();
    let moments: Vec<f64> = (0..2 * r - 1)
        .map(|j| {
            lambdas
                .iter()
                .zip(f_hat.0.iter())
                .map(|(&l, &c)| l.powi(j as i32) * c)
                .sum()
        })
        .collect();
    Ok(DMatrix::from_fn(r, r, |i, j| moments[i + j]))
}

/// Definiteness of `f` through its Hankel moment matrix of order
/// `r = distinct_count`. Only valid for `f` in the Laplacian subalgebra.
///
/// The matrix is symmetrically rescaled by the square roots of its diagonal
/// before its eigenvalues are inspected; congruence keeps the inertia and
/// removes most of the Vandermonde-type scaling. Eigenvalues within
/// `tol * max|eig|` of zero count as zero.
pub fn moment_pd_check(spectrum: &Spectrum, f: &Signal, tol: f64) -> Result<Definiteness> {
    if !spectrum.in_subalgebra(f, tol.max(1e-12) * spectrum.gft(f)?.0.amax().max(1.0))? {
        return Err(GbfError::NotInSubalgebra);
    }
    let h = hankel_moment_matrix(spectrum, f, spectrum.distinct_count())?;
    Ok(matrix_definiteness(&h, tol))
}

/// PD / PSD / neither for a symmetric matrix, after diagonal rescaling.
/// Diagonal entries at rounding level are left unscaled so that noise is
/// not blown up to unit size.
pub fn matrix_definiteness(h: &DMatrix<f64>, tol: f64) -> Definiteness {
    let r = h.nrows();
    let scale_floor = h.amax() * 1e-13 * r as f64;
    let d: Vec<f64> = (0..r)
        .map(|i| {
            let v = h[(i, i)].abs();
            if v > scale_floor {
                1.0 / v.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(r, r, |i, j| h[(i, j)] * d[i] * d[j]);
    let scaled = (&scaled + scaled.transpose()) * 0.5;
    let eig = SymmetricEigen::new(scaled).eigenvalues;
    let max_abs = eig.amax();
    if max_abs == 0.0 {
        return Definiteness::Psd;
    }
    let min = eig.min();
    if min > tol * max_abs {
        Definiteness::Pd
    } else if min >= -tol * max_abs {
        Definiteness::Psd
    } else {
        Definiteness::Neither
    }
}

/// Adds `delta` to every coefficient off the positive support: the spectral
/// form of adding `delta` times the reproducing kernel of the complement.
///
/// Accepts CPD input (support as classified), PSD input (support = strictly
/// positive coefficients) and PD input (empty complement, returned
/// unchanged).
pub fn augment_cpd(spectrum: &Spectrum, gbf: &Gbf, delta: f64) -> Result<Gbf> {
    let eps = default_pd_tolerance(gbf.coeffs());
    let support: Vec<usize> = match gbf.classification() {
        Classification::PositiveDefinite => return Ok(gbf.clone()),
        Classification::ConditionallyPositiveDefinite { support } => support.clone(),
        Classification::PositiveSemidefinite => (0..gbf.len()).filter(|&k| gbf.coeffs[k] > eps).collect(),
        Classification::Indefinite => {
            return Err(GbfError::InvalidParam(
                "indefinite function has no positive support to augment; declare one with Gbf::conditionally_pd".into(),
            ))
        }
    };
    let required = (-gbf.min_coeff()).max(0.0);
    if !delta.is_finite() || delta <= required {
        return Err(GbfError::DeltaTooSmall { delta, required });
    }
    let mut in_support = vec![false; gbf.len()];
    for &k in &support {
        in_support[k] = true;
    }
    let coeffs = DVector::from_iterator(
        gbf.len(),
        gbf.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if in_support[k] { c } else { c + delta }),
    );
    Gbf::from_coeffs(spectrum, coeffs, format!("{}+aug(delta={delta})", gbf.descriptor))
}

/// The `g` with `g * g = f` and nonnegative Fourier coefficients
/// `sqrt(f_hat)`.
pub fn convolution_square_root(spectrum: &Spectrum, gbf: &Gbf) -> Result<Signal> {
    let eps = default_pd_tolerance(gbf.coeffs());
    let min = gbf.min_coeff();
    if min < -eps {
        return Err(GbfError::NotPsd { min_coeff: min });
    }
    let root = gbf.coeffs.map(|c| c.max(0.0).sqrt());
    spectrum.igft(&SpectralVector(root))
}

// ---------------------------------------------------------------------------
// Catalog

pub fn unity_gbf(spectrum: &Spectrum) -> Gbf {
    Gbf::from_coeffs(spectrum, DVector::from_element(spectrum.len(), 1.0), "unity")
        .expect("unity coefficients are finite")
}

/// The Laplacian itself, `f_hat = (lambda_1, ..., lambda_n)`. Conditionally
/// positive definite on connected graphs.
pub fn laplacian_gbf(spectrum: &Spectrum) -> Gbf {
    let coeffs = spectrum.eigenvalues().map(|l| {
        if l.abs() <= spectrum.cluster_tolerance() {
            0.0
        } else {
            l
        }
    });
    Gbf::from_coeffs(spectrum, coeffs, "laplacian").expect("eigenvalues are finite")
}

/// `L + delta * (projection onto the Laplacian null space)`.
pub fn augmented_laplacian_gbf(spectrum: &Spectrum, delta: f64) -> Result<Gbf> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(GbfError::InvalidParam(format!(
            "augmentation delta must be positive, got {delta}"
        )));
    }
    let lap = laplacian_gbf(spectrum);
    let mut g = augment_cpd(spectrum, &lap, delta)?;
    g.descriptor = format!("auglap:delta={delta}");
    Ok(g)
}

/// `p(L)` for `p(x) = c0 + c1 x + c2 x^2 + ...`, evaluated by Horner's rule
/// at each eigenvalue. The result is only PD when `p` is positive on the
/// spectrum; the classification reflects that.
pub fn laplacian_polynomial_gbf(spectrum: &Spectrum, poly: &[f64]) -> Result<Gbf> {
    if poly.is_empty() {
        return Err(GbfError::InvalidParam(
            "polynomial needs at least one coefficient".into(),
        ));
    }
    let coeffs = spectrum
        .eigenvalues()
        .map(|l| poly.iter().rev().fold(0.0, |acc, &c| acc * l + c));
    let desc = format!(
        "poly:{}",
        poly.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    );
    Gbf::from_coeffs(spectrum, coeffs, desc)
}

/// Variational spline kernel `(eps I + L)^{-s}`.
pub fn variational_spline_gbf(spectrum: &Spectrum, eps: f64, s: f64) -> Result<Gbf> {
    if !eps.is_finite() || !s.is_finite() || eps <= 0.0 || s <= 0.0 {
        return Err(GbfError::InvalidParam(format!(
            "spline needs eps > 0 and s > 0, got eps={eps}, s={s}"
        )));
    }
    let coeffs = spectrum.eigenvalues().map(|l| (eps + l).powf(-s));
    Gbf::from_coeffs(spectrum, coeffs, format!("spline:eps={eps},s={s}"))
}

/// `(L^+)^s`: zero on the null space, `lambda_k^{-s}` elsewhere. Needs a
/// connected graph.
pub fn pseudoinverse_spline_gbf(spectrum: &Spectrum, s: f64) -> Result<Gbf> {
    if !s.is_finite() || s <= 0.0 {
        return Err(GbfError::InvalidParam(format!("pspline needs s > 0, got {s}")));
    }
    if spectrum.null_indices().len() != 1 {
        return Err(GbfError::InvalidParam(
            "pseudo-inverse spline needs a connected graph".into(),
        ));
    }
    let tol = spectrum.cluster_tolerance();
    let coeffs = spectrum
        .eigenvalues()
        .map(|l| if l.abs() <= tol { 0.0 } else { l.powf(-s) });
    Gbf::from_coeffs(spectrum, coeffs, format!("pspline:s={s}"))
}

/// Diffusion kernel `exp(-t L)`.
pub fn diffusion_gbf(spectrum: &Spectrum, t: f64) -> Result<Gbf> {
    if !t.is_finite() {
        return Err(GbfError::InvalidParam(format!(
            "diffusion time must be finite, got {t}"
        )));
    }
    let coeffs = spectrum.eigenvalues().map(|l| (-t * l).exp());
    Gbf::from_coeffs(spectrum, coeffs, format!("diffusion:t={t}"))
}

/// `f_hat_k = k^{-s}` indexed by frequency rank `k = 1..n`.
pub fn polydecay_gbf(spectrum: &Spectrum, s: f64) -> Result<Gbf> {
    if !s.is_finite() || s <= 0.0 {
        return Err(GbfError::InvalidParam(format!("polydecay needs s > 0, got {s}")));
    }
    let coeffs = DVector::from_fn(spectrum.len(), |k, _| ((k + 1) as f64).powf(-s));
    Gbf::from_coeffs(spectrum, coeffs, format!("polydecay:s={s}"))
}

/// `f_{B_M} = u_1 + ... + u_M`, the projection kernel onto the first `m`
/// frequencies.
pub fn bandlimited_gbf(spectrum: &Spectrum, m: usize) -> Result<Gbf> {
    spectrum.check_bandwidth(m)?;
    let coeffs = DVector::from_fn(spectrum.len(), |k, _| if k < m { 1.0 } else { 0.0 });
    Gbf::from_coeffs(spectrum, coeffs, format!("bandlimited:M={m}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphKind};
    use approx::assert_abs_diff_eq;

    fn spectrum(kind: GraphKind) -> Spectrum {
        Spectrum::of_graph(&generate_graph(&kind).unwrap().graph).unwrap()
    }

    fn p2() -> Spectrum {
        spectrum(GraphKind::Path { n: 2 })
    }

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(x)
    }

    #[test]
    fn classify_examples() {
        let s = spectrum(GraphKind::Cycle { n: 5 });
        assert_eq!(
            classify(&s, &DVector::from_element(5, 1.0), 1e-10),
            Classification::PositiveDefinite
        );
        let lap = laplacian_gbf(&s);
        assert_eq!(
            lap.classification(),
            &Classification::ConditionallyPositiveDefinite {
                support: vec![1, 2, 3, 4]
            }
        );
        let p = p2();
        assert_eq!(classify(&p, &v(&[1.0, -0.5]), 1e-10), Classification::Indefinite);
        assert_eq!(
            classify(&p, &v(&[-0.2, 1.0]), 1e-10),
            Classification::ConditionallyPositiveDefinite { support: vec![1] }
        );
    }

    #[test]
    fn kernel_examples() {
        let s = spectrum(GraphKind::Grid { rows: 2, cols: 3 });
        let k = kernel_matrix(&s, &unity_gbf(&s)).unwrap();
        assert_abs_diff_eq!(k.matrix, DMatrix::identity(6, 6), epsilon = 1e-13);

        let p = p2();
        let diff = diffusion_gbf(&p, 0.5).unwrap();
        let k = kernel_matrix(&p, &diff).unwrap().matrix;
        assert_abs_diff_eq!(k[(0, 0)], 0.68394, epsilon = 5e-6);
        assert_abs_diff_eq!(k[(0, 1)], 0.31606, epsilon = 5e-6);
        assert_abs_diff_eq!(k[(1, 1)], 0.68394, epsilon = 5e-6);

        let mut ind = DVector::zeros(6);
        ind[3] = 1.0;
        let g = Gbf::from_coeffs(&s, ind, "e4").unwrap();
        let u3 = s.eigenvector(3).0;
        assert_abs_diff_eq!(
            kernel_matrix(&s, &g).unwrap().matrix,
            &u3 * u3.transpose(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn hankel_examples() {
        let p = p2();
        let h = hankel_moment_matrix(&p, &p.unity(), 2).unwrap();
        assert_abs_diff_eq!(h, DMatrix::from_row_slice(2, 2, &[2.0, 2.0, 2.0, 4.0]), epsilon = 1e-12);
        assert_eq!(
            hankel_moment_matrix(&p, &Signal::zeros(2), 2).unwrap(),
            DMatrix::zeros(2, 2)
        );
        let s = spectrum(GraphKind::Cycle { n: 6 });
        let f = Signal::from_vec(vec![0.3, 1.0, -2.0, 0.5, 0.0, 1.5]);
        let h1 = hankel_moment_matrix(&s, &f, 1).unwrap();
        assert_abs_diff_eq!(h1[(0, 0)], s.gft(&f).unwrap().0.sum(), epsilon = 1e-12);
        let h4 = hankel_moment_matrix(&s, &f, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i + 1 < 4 && j > 0 {
                    assert_eq!(h4[(i + 1, j - 1)], h4[(i, j)]);
                }
            }
        }
    }

    #[test]
    fn moment_check_examples() {
        let p = p2();
        assert_eq!(moment_pd_check(&p, &p.unity(), 1e-10).unwrap(), Definiteness::Pd);
        let f = p.igft(&SpectralVector::from_vec(vec![1.0, 0.0])).unwrap();
        assert_eq!(moment_pd_check(&p, &f, 1e-10).unwrap(), Definiteness::Psd);
        let h = hankel_moment_matrix(&p, &f, 2).unwrap();
        assert_abs_diff_eq!(h, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]), epsilon = 1e-14);
        let g = p.igft(&SpectralVector::from_vec(vec![1.0, -1.0])).unwrap();
        let h = hankel_moment_matrix(&p, &g, 2).unwrap();
        assert_abs_diff_eq!(
            h,
            DMatrix::from_row_slice(2, 2, &[0.0, -2.0, -2.0, -4.0]),
            epsilon = 1e-12
        );
        assert_eq!(moment_pd_check(&p, &g, 1e-10).unwrap(), Definiteness::Neither);

        let k3 = spectrum(GraphKind::Complete { n: 3 });
        let outside = k3.igft(&SpectralVector::from_vec(vec![5.0, 1.0, 2.0])).unwrap();
        assert_eq!(moment_pd_check(&k3, &outside, 1e-10), Err(GbfError::NotInSubalgebra));
    }

    #[test]
    fn augment_examples() {
        let s = spectrum(GraphKind::Path { n: 5 });
        let lap = laplacian_gbf(&s);
        let aug = augment_cpd(&s, &lap, 1.0).unwrap();
        assert!(aug.classification().is_positive_definite());
        assert_abs_diff_eq!(aug.coeffs()[0], 1.0, epsilon = 1e-12);
        for k in 1..5 {
            assert_eq!(aug.coeffs()[k], lap.coeffs()[k]);
        }

        let diff = diffusion_gbf(&s, 2.0).unwrap();
        assert_eq!(augment_cpd(&s, &diff, 0.3).unwrap(), diff);

        let p = p2();
        let g = Gbf::conditionally_pd(&p, v(&[-0.2, 1.0]), vec![1], "test").unwrap();
        let aug = augment_cpd(&p, &g, 0.5).unwrap();
        assert_abs_diff_eq!(aug.coeffs().clone(), v(&[0.3, 1.0]), epsilon = 1e-15);
        assert!(aug.classification().is_positive_definite());
        assert!(matches!(augment_cpd(&p, &g, 0.1), Err(GbfError::DeltaTooSmall { .. })));
        assert!(matches!(
            augment_cpd(&s, &lap, 0.0),
            Err(GbfError::DeltaTooSmall { .. })
        ));

        let band = bandlimited_gbf(&s, 2).unwrap();
        let aug = augment_cpd(&s, &band, 1e-3).unwrap();
        assert_abs_diff_eq!(aug.coeffs().clone(), v(&[1.0, 1.0, 1e-3, 1e-3, 1e-3]), epsilon = 1e-15);
    }

    #[test]
    fn square_root_examples() {
        let s = spectrum(GraphKind::Cycle { n: 7 });
        let unity = unity_gbf(&s);
        let g = convolution_square_root(&s, &unity).unwrap();
        assert_abs_diff_eq!(g.0, s.unity().0, epsilon = 1e-13);

        let p = p2();
        let f = Gbf::from_coeffs(&p, v(&[4.0, 1.0]), "f").unwrap();
        let g = convolution_square_root(&p, &f).unwrap();
        assert_abs_diff_eq!(p.gft(&g).unwrap().0, v(&[2.0, 1.0]), epsilon = 1e-14);

        let bad = Gbf::from_coeffs(&p, v(&[1.0, -1.0]), "bad").unwrap();
        assert!(matches!(
            convolution_square_root(&p, &bad),
            Err(GbfError::NotPsd { .. })
        ));
    }

    #[test]
    fn catalog() {
        let s = spectrum(GraphKind::Grid { rows: 3, cols: 3 });
        let n = s.len();
        assert_abs_diff_eq!(
            diffusion_gbf(&s, 0.0).unwrap().coeffs().clone(),
            DVector::from_element(n, 1.0)
        );
        let pol = polydecay_gbf(&s, 4.0).unwrap();
        assert_eq!(pol.coeffs()[0], 1.0);
        assert_abs_diff_eq!(pol.coeffs()[1], 1.0 / 16.0);
        assert_abs_diff_eq!(pol.coeffs()[2], 1.0 / 81.0);
        assert!(pol.classification().is_positive_definite());

        let band = bandlimited_gbf(&s, 4).unwrap();
        assert_eq!(band.classification(), &Classification::PositiveSemidefinite);
        assert!(band.coeffs().iter().skip(4).all(|&c| c == 0.0));
        assert_eq!(
            bandlimited_gbf(&s, n).unwrap().classification(),
            &Classification::PositiveDefinite
        );

        for g in [
            augmented_laplacian_gbf(&s, 0.5).unwrap(),
            variational_spline_gbf(&s, 0.1, 2.0).unwrap(),
            diffusion_gbf(&s, 10.0).unwrap(),
            laplacian_polynomial_gbf(&s, &[1.0, 0.5, 2.0]).unwrap(),
        ] {
            assert!(g.classification().is_positive_definite(), "{}", g.descriptor());
        }
        // 1 - x is zero at lambda = 1 and negative above.
        let bad = laplacian_polynomial_gbf(&s, &[1.0, -1.0]).unwrap();
        assert!(!bad.classification().is_positive_definite());

        let ps = pseudoinverse_spline_gbf(&s, 1.5).unwrap();
        assert_eq!(
            ps.classification(),
            &Classification::ConditionallyPositiveDefinite {
                support: (1..n).collect()
            }
        );
        assert!(variational_spline_gbf(&s, 0.0, 1.0).is_err());
        assert!(polydecay_gbf(&s, -1.0).is_err());
        assert!(bandlimited_gbf(&s, 0).is_err());
    }

    #[test]
    fn laplacian_polynomial_matches_matrix_powers() {
        let g = generate_graph(&GraphKind::Path { n: 6 }).unwrap().graph;
        let l = g.normalized_laplacian().unwrap();
        let s = Spectrum::from_laplacian(&l).unwrap();
        let poly = [0.5, -0.2, 0.7];
        let direct = DMatrix::identity(6, 6) * poly[0] + &l * poly[1] + &l * &l * poly[2];
        let k = kernel_matrix(&s, &laplacian_polynomial_gbf(&s, &poly).unwrap()).unwrap();
        assert_abs_diff_eq!(k.matrix, direct, epsilon = 1e-12);
    }
}
