//! Windowed graph Fourier transform with a positive definite window.
//!
//! The atom at node `i` and frequency `k` is `sqrt(n) * (u_k .* C_{e_i} f)`.
//! Frequencies are 0-based here; frequency 0 (the constant eigenvector) is
//! required in every frequency set.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{GbfError, Result};
use crate::gbf::{kernel_matrix, Gbf};
use crate::spectral::{Signal, Spectrum};

/// Entries of `u_k` at or below this magnitude count as zeros.
pub const ZERO_ENTRY: f64 = 1e-10;

/// Sorted, deduplicated 0-based frequency indices containing 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencySet(Vec<usize>);

impl FrequencySet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.first() != Some(&0) {
            return Err(GbfError::InvalidParam(
                "frequency set must contain the first frequency".into(),
            ));
        }
        if let Some(&k) = indices.iter().find(|&&k| k >= n) {
            return Err(GbfError::IndexOutOfRange { index: k, len: n });
        }
        Ok(Self(indices))
    }

    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn require_window(spectrum: &Spectrum, window: &Gbf) -> Result<()> {
    if !spectrum.first_eigenvector_constant() {
        return Err(GbfError::FirstEigenvectorNotConstant);
    }
    window.require_pd()
}

#[derive(Debug, Clone)]
pub struct SpaceFrequencyAtoms {
    /// `atoms[(i, j)]` is the atom at node `i` and frequency `frequencies[j]`.
    pub atoms: Vec<Vec<Signal>>,
    pub window: String,
    pub frequency_set: FrequencySet,
}

pub fn atoms(spectrum: &Spectrum, window: &Gbf, freqs: &FrequencySet) -> Result<SpaceFrequencyAtoms> {
    require_window(spectrum, window)?;
    let k = kernel_matrix(spectrum, window)?.matrix;
    let n = spectrum.len();
    let scale = (n as f64).sqrt();
    let atoms = (0..n)
        .map(|i| {
            freqs
                .indices()
                .iter()
                .map(|&f| Signal(spectrum.fourier().column(f).component_mul(&k.column(i)) * scale))
                .collect()
        })
        .collect();
    Ok(SpaceFrequencyAtoms {
        atoms,
        window: window.descriptor().to_string(),
        frequency_set: freqs.clone(),
    })
}

/// `n x |S|` matrix of `F(i, k) = <x, atom(i, k)> = sqrt(n) (K_f (u_k .* x))_i`.
pub fn windowed_fourier(spectrum: &Spectrum, window: &Gbf, freqs: &FrequencySet, x: &Signal) -> Result<DMatrix<f64>> {
    require_window(spectrum, window)?;
    let n = spectrum.len();
    if x.len() != n {
        return Err(GbfError::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let k = kernel_matrix(spectrum, window)?.matrix;
    let scale = (n as f64).sqrt();
    let mut out = DMatrix::zeros(n, freqs.len());
    for (j, &f) in freqs.indices().iter().enumerate() {
        let modulated = spectrum.fourier().column(f).component_mul(&x.0);
        out.set_column(j, &(&k * modulated * scale));
    }
    Ok(out)
}

/// `sum_{i,k} atom atom^T = n sum_k M_k K_f^2 M_k`.
pub fn frame_operator(spectrum: &Spectrum, window: &Gbf, freqs: &FrequencySet) -> Result<DMatrix<f64>> {
    require_window(spectrum, window)?;
    let n = spectrum.len();
    let k = kernel_matrix(spectrum, window)?.matrix;
    let k2 = &k * &k;
    let mut s = DMatrix::zeros(n, n);
    for &f in freqs.indices() {
        let u = spectrum.fourier().column(f);
        s += DMatrix::from_fn(n, n, |a, b| u[a] * k2[(a, b)] * u[b]);
    }
    s *= n as f64;
    Ok((&s + s.transpose()) * 0.5)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    /// `(min f_hat)^2`.
    pub a_theory: f64,
    /// `sqrt(n) (max f_hat)^2`.
    pub b_theory: f64,
    /// `n (max f_hat)^2 max_v sum_{k in S} u_k(v)^2`, which always holds.
    pub b_valid: f64,
    /// `sqrt(n) (min f_hat)^2`, set for the full frequency set only.
    pub a_full_set: Option<f64>,
    pub a_emp: f64,
    pub b_emp: f64,
    /// 0-based frequency -> whether `u_k` has no zero entry.
    pub is_basis_per_frequency: BTreeMap<usize, bool>,
}

pub fn frame_bounds(spectrum: &Spectrum, window: &Gbf, freqs: &FrequencySet) -> Result<FrameBounds> {
    let s = frame_operator(spectrum, window, freqs)?;
    let eig = SymmetricEigen::new(s).eigenvalues;
    let n = spectrum.len();
    let nf = n as f64;
    let fmin = window.min_coeff();
    let fmax = window.max_coeff();
    let u = spectrum.fourier();
    let row_mass = (0..n)
        .map(|v| freqs.indices().iter().map(|&k| u[(v, k)] * u[(v, k)]).sum::<f64>())
        .fold(0.0, f64::max);
    let is_basis_per_frequency = freqs
        .indices()
        .iter()
        .map(|&k| (k, u.column(k).iter().all(|e| e.abs() > ZERO_ENTRY)))
        .collect();
    Ok(FrameBounds {
        a_theory: fmin * fmin,
        b_theory: nf.sqrt() * fmax * fmax,
        b_valid: nf * fmax * fmax * row_mass,
        a_full_set: (freqs.len() == n).then(|| nf.sqrt() * fmin * fmin),
        a_emp: eig.min(),
        b_emp: eig.max(),
        is_basis_per_frequency,
    })
}
