//! Norming sets, interpolation error bounds and conditioning.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GbfError, Result};
use crate::gbf::Gbf;
use crate::interp::{interpolate, native_norm, SamplingSet};
use crate::linalg::symmetric_norm;
use crate::spectral::{Signal, Spectrum};

/// Guard band for the strict inequality `rho < 1`.
pub const NORMING_GUARD: f64 = 1e-10;
/// Singular values of the sampled eigenvector block at or below this count
/// as zero.
pub const SIGMA_FLOOR: f64 = 1e-12;

/// `S_W x`: `x` on `W`, zero elsewhere.
pub fn sampling_projection(w: &SamplingSet, x: &Signal) -> Result<Signal> {
    if x.len() != w.ambient() {
        return Err(GbfError::DimensionMismatch {
            expected: w.ambient(),
            found: x.len(),
        });
    }
    let mask = w.mask();
    Ok(Signal(DVector::from_fn(
        x.len(),
        |i, _| if mask[i] { x.0[i] } else { 0.0 },
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormingReport {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n_samples: usize,
    pub rho: f64,
    pub constant_bound: f64,
    pub constant_exact: f64,
    pub is_norming: bool,
    #[serde(skip)]
    pub sampling: Option<SamplingSet>,
}

/// `B_M (I - S_W) B_M` as an `n x n` matrix.
pub fn norming_operator(spectrum: &Spectrum, w: &SamplingSet, m: usize) -> Result<DMatrix<f64>> {
    spectrum.check_bandwidth(m)?;
    if w.ambient() != spectrum.len() {
        return Err(GbfError::DimensionMismatch {
            expected: spectrum.len(),
            found: w.ambient(),
        });
    }
    let um = spectrum.fourier().columns(0, m).into_owned();
    let b = &um * um.transpose();
    let mut off = b.clone();
    for &j in w.indices() {
        off.row_mut(j).fill(0.0);
    }
    Ok(&b * off)
}

/// Smallest singular value of `E[k][m] = u_m(w_k)`, `k < N`, `m < M`.
/// Zero when `N < M`.
pub fn sampled_sigma_min(spectrum: &Spectrum, w: &SamplingSet, m: usize) -> Result<f64> {
    spectrum.check_bandwidth(m)?;
    if w.len() < m {
        return Ok(0.0);
    }
    let e = w.rows(&spectrum.fourier().columns(0, m).into_owned());
    Ok(e.singular_values().min())
}

pub fn norming_check(spectrum: &Spectrum, w: &SamplingSet, m: usize) -> Result<NormingReport> {
    let op = norming_operator(spectrum, w, m)?;
    let rho = symmetric_norm(&op);
    let is_norming = rho < 1.0 - NORMING_GUARD;
    let sigma = sampled_sigma_min(spectrum, w, m)?;
    let constant_exact = if is_norming && sigma > SIGMA_FLOOR {
        1.0 / sigma
    } else {
        f64::INFINITY
    };
    let constant_bound = if is_norming { 1.0 / (1.0 - rho) } else { f64::INFINITY };
    Ok(NormingReport {
        m,
        n_samples: w.len(),
        rho,
        constant_bound,
        constant_exact,
        is_norming,
        sampling: Some(w.clone()),
    })
}

/// The uniform bound `(1 + kappa) (sum_{k>M} f_hat_k)^{1/2} ||x||_{K_f}`,
/// once with the exact norming constant and once with `1/(1 - rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBound {
    pub value: f64,
    pub with_constant_bound: f64,
    pub tail: f64,
    pub native_norm: f64,
}

pub fn error_bound(spectrum: &Spectrum, gbf: &Gbf, report: &NormingReport, x: &Signal) -> Result<ErrorBound> {
    gbf.require_pd()?;
    if !report.is_norming {
        return Err(GbfError::NotNorming {
            m: report.m,
            rho: report.rho,
        });
    }
    spectrum.check_bandwidth(report.m)?;
    let tail: f64 = gbf.coeffs().iter().skip(report.m).sum();
    let nn = native_norm(spectrum, gbf, x)?;
    let root = tail.max(0.0).sqrt();
    Ok(ErrorBound {
        value: (1.0 + report.constant_exact) * root * nn,
        with_constant_bound: (1.0 + report.constant_bound) * root * nn,
        tail,
        native_norm: nn,
    })
}

/// Decay hypotheses on `f_hat_k`, indexed by rank `k = 1..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayHypothesis {
    /// `f_hat_k <= c k^{-s}`, `s > 1`.
    Polynomial { c: f64, s: f64 },
    /// `f_hat_k <= c e^{-t k}`, `t > 0`.
    Exponential { c: f64, t: f64 },
}

impl DecayHypothesis {
    fn validate(&self) -> Result<()> {
        match *self {
            DecayHypothesis::Polynomial { c, s } => {
                if !s.is_finite() || s <= 1.0 {
                    return Err(GbfError::InvalidRate(format!("polynomial rate must exceed 1, got {s}")));
                }
                if !c.is_finite() || c < 0.0 {
                    return Err(GbfError::InvalidRate(format!("constant must be nonnegative, got {c}")));
                }
            }
            DecayHypothesis::Exponential { c, t } => {
                if !t.is_finite() || t <= 0.0 {
                    return Err(GbfError::InvalidRate(format!(
                        "exponential rate must be positive, got {t}"
                    )));
                }
                if !c.is_finite() || c < 0.0 {
                    return Err(GbfError::InvalidRate(format!("constant must be nonnegative, got {c}")));
                }
            }
        }
        Ok(())
    }

    /// The majorant at rank `k` (1-based).
    pub fn majorant(&self, k: usize) -> f64 {
        match *self {
            DecayHypothesis::Polynomial { c, s } => c * (k as f64).powf(-s),
            DecayHypothesis::Exponential { c, t } => c * (-t * k as f64).exp(),
        }
    }
}

/// Checks `f_hat_k <= majorant(k)` for every `k`, with a relative slack of
/// `1e-12`.
pub fn check_decay_hypothesis(gbf: &Gbf, hyp: &DecayHypothesis) -> Result<()> {
    hyp.validate()?;
    for (i, &f) in gbf.coeffs().iter().enumerate() {
        let bound = hyp.majorant(i + 1);
        if f > bound + 1e-12 * bound.abs().max(f64::MIN_POSITIVE) {
            return Err(GbfError::DecayHypothesisViolated { k: i + 1 });
        }
    }
    Ok(())
}

/// Closed-form bound replacing the tail sum by its integral (polynomial) or
/// geometric (exponential) majorant.
pub fn decay_error_bound(hyp: &DecayHypothesis, m: usize, norming_constant: f64, native_norm: f64) -> Result<f64> {
    hyp.validate()?;
    if m == 0 {
        return Err(GbfError::BandwidthOutOfRange { m, n: 0 });
    }
    let mf = m as f64;
    let tail = match *hyp {
        DecayHypothesis::Polynomial { c, s } => c / (s - 1.0) * mf.powf(1.0 - s),
        DecayHypothesis::Exponential { c, t } => c / (1.0 - (-t).exp()) * (-t * (mf + 1.0)).exp(),
    };
    Ok(tail.sqrt() * (1.0 + norming_constant) * native_norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub operator_bound: f64,
    pub spectral_ratio: f64,
    pub empirical: f64,
}

pub const CONDITION_TRIALS: usize = 100;

/// Norm of the sample-to-interpolant map against its two upper bounds.
/// The empirical value uses `CONDITION_TRIALS` random unit sample vectors
/// drawn from `seed`.
pub fn condition_report(spectrum: &Spectrum, gbf: &Gbf, w: &SamplingSet, seed: u64) -> Result<ConditionReport> {
    gbf.require_pd()?;
    let e = w.rows(spectrum.fourier());
    let mut ef = e.clone();
    for (k, mut col) in ef.column_iter_mut().enumerate() {
        col *= gbf.coeffs()[k];
    }
    let kw = ef * e.transpose();
    let kw = (&kw + kw.transpose()) * 0.5;
    let kw_min = SymmetricEigen::new(kw).eigenvalues.min();
    let kf_norm = gbf.coeffs().amax();
    let operator_bound = kf_norm / kw_min;
    let spectral_ratio = gbf.max_coeff() / gbf.min_coeff();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut empirical: f64 = 0.0;
    for _ in 0..CONDITION_TRIALS {
        let mut s = DVector::from_fn(w.len(), |_, _| rng.random_range(-1.0..1.0));
        let norm = s.norm();
        if norm == 0.0 {
            continue;
        }
        s /= norm;
        let it = interpolate(spectrum, gbf, w, &s)?;
        empirical = empirical.max(it.signal.norm());
    }
    Ok(ConditionReport {
        operator_bound,
        spectral_ratio,
        empirical,
    })
}
