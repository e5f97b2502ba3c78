//! Quadrature rules exact on the span of the sampled translates.

use nalgebra::DVector;

use crate::analysis::{error_bound, NormingReport};
use crate::error::{GbfError, Result};
use crate::gbf::{kernel_matrix, Gbf};
use crate::interp::{kernel_submatrix, SamplingSet};
use crate::linalg::Cholesky;
use crate::spectral::{Signal, Spectrum};

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub weights: DVector<f64>,
    pub sampling: SamplingSet,
    pub gbf: String,
    /// `max_l |sum_k mu_k K(w_k, w_l) - mean(K(., w_l))|`.
    pub exactness_residual: f64,
}

/// Solves `K_{f,W} mu = b` with `b_k` the node mean of the translate to
/// `w_k`.
pub fn quadrature_weights(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet) -> Result<QuadratureRule> {
    gbf.require_pd()?;
    if w.ambient() != spectrum.len() {
        return Err(GbfError::DimensionMismatch {
            expected: spectrum.len(),
            found: w.ambient(),
        });
    }
    let k = kernel_matrix(spectrum, gbf)?;
    let n = spectrum.len() as f64;
    let b = DVector::from_iterator(w.len(), w.indices().iter().map(|&j| k.matrix.column(j).sum() / n));
    let kw = kernel_submatrix(&k, w)?;
    let mu = Cholesky::factor(&kw)?.solve(&b);
    let exactness_residual = (&kw * &mu - &b).amax();
    Ok(QuadratureRule {
        weights: mu,
        sampling: w.clone(),
        gbf: gbf.descriptor().to_string(),
        exactness_residual,
    })
}

/// `Q_W x = sum_k mu_k x(w_k)`.
pub fn quadrature_apply(rule: &QuadratureRule, x: &Signal) -> Result<f64> {
    Ok(rule.weights.dot(&rule.sampling.restrict(x)?))
}

/// Same bound as for interpolation: `Q_W x` is the mean of `I_W x`.
pub fn quadrature_error_bound(spectrum: &Spectrum, gbf: &Gbf, report: &NormingReport, x: &Signal) -> Result<f64> {
    Ok(error_bound(spectrum, gbf, report, x)?.value)
}
