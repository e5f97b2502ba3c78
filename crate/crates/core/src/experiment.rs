//! Seeded experiment helpers: reference graph, nested random sampling,
//! heat-kernel test signals and error-versus-N tables.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::descriptor::GbfSpec;
use crate::error::{GbfError, Result};
use crate::gbf::{augment_cpd, diffusion_gbf};
use crate::graph::{connected_random_geometric, Graph};
use crate::interp::{bandlimited_least_squares, interpolate, SamplingSet};
use crate::spectral::{Signal, Spectrum};

pub const REFERENCE_NODES: usize = 300;
pub const REFERENCE_RADIUS: f64 = 0.12;
pub const REFERENCE_SEED: u64 = 2024;

/// A connected random geometric graph on `REFERENCE_NODES` points. Seeds
/// are tried upwards from `REFERENCE_SEED`.
pub fn reference_graph() -> Result<(Graph, u64)> {
    connected_random_geometric(REFERENCE_NODES, REFERENCE_RADIUS, REFERENCE_SEED, 1000)
}

/// A seeded random ordering of `0..n`. Its prefixes form the nested sets
/// `W_1 ⊂ W_2 ⊂ ...`, each adding a node drawn from the complement.
pub fn random_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

pub fn nested_random_sampling(n: usize, count: usize, seed: u64) -> Result<SamplingSet> {
    if count == 0 || count > n {
        return Err(GbfError::InvalidSampling(format!("cannot draw {count} of {n} nodes")));
    }
    let mut order = random_order(n, seed);
    order.truncate(count);
    SamplingSet::new(order, n)
}

/// `C_{e_src} exp(-t L)`, a smooth signal whose Fourier coefficients decay
/// like `exp(-t lambda_k)`.
pub fn heat_signal(spectrum: &Spectrum, t: f64, src: usize) -> Result<Signal> {
    let g = diffusion_gbf(spectrum, t)?;
    spectrum.translate_spectral(&g.spectral(), src)
}

/// Recovers `x` from its samples on `w` with the given GBF. Bandlimited
/// specs are fitted by least squares in `B_M`; everything else by kernel
/// interpolation, which needs a positive definite GBF. With `augment`, a
/// semi-definite GBF is first shifted by that amount off its support.
pub fn reconstruct(
    spectrum: &Spectrum,
    spec: &GbfSpec,
    w: &SamplingSet,
    x: &Signal,
    augment: Option<f64>,
) -> Result<Signal> {
    let samples = w.restrict(x)?;
    match spec {
        GbfSpec::Bandlimited(_) => {
            let gbf = spec.build_with_samples(spectrum, w.len())?;
            let m = gbf.coeffs().iter().filter(|&&c| c > 0.0).count();
            bandlimited_least_squares(spectrum, w, &samples, m)
        }
        _ => {
            let mut gbf = spec.build_with_samples(spectrum, w.len())?;
            if let Some(delta) = augment {
                gbf = augment_cpd(spectrum, &gbf, delta)?;
            }
            Ok(interpolate(spectrum, &gbf, w, &samples)?.signal)
        }
    }
}

pub fn max_error(x: &Signal, y: &Signal) -> f64 {
    (&x.0 - &y.0).amax()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    #[serde(rename = "N")]
    pub n_samples: usize,
    /// Max errors in the order of the descriptors; `None` when the solve
    /// failed numerically.
    pub errors: Vec<Option<f64>>,
}

/// Max reconstruction error for each `N` in `grid` and each spec, using the
/// nested prefixes of `order`.
pub fn error_table(
    spectrum: &Spectrum,
    specs: &[GbfSpec],
    x: &Signal,
    order: &[usize],
    grid: &[usize],
    augment: Option<f64>,
) -> Result<Vec<ErrorRow>> {
    let n = spectrum.len();
    grid.iter()
        .map(|&count| {
            if count == 0 || count > order.len() {
                return Err(GbfError::InvalidSampling(format!(
                    "N = {count} outside 1..={}",
                    order.len()
                )));
            }
            let w = SamplingSet::new(order[..count].to_vec(), n)?;
            let errors = specs
                .iter()
                .map(|spec| match reconstruct(spectrum, spec, &w, x, augment) {
                    Ok(y) => Ok(Some(max_error(x, &y))),
                    Err(e) if e.is_numerical() => Ok(None),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ErrorRow {
                n_samples: count,
                errors,
            })
        })
        .collect()
}

pub fn error_table_csv(specs: &[GbfSpec], rows: &[ErrorRow]) -> String {
    let mut out = String::from("N");
    for s in specs {
        out.push(',');
        out.push_str(&s.to_string());
    }
    out.push('\n');
    for r in rows {
        out.push_str(&r.n_samples.to_string());
        for e in &r.errors {
            out.push(',');
            if let Some(v) = e {
                out.push_str(&v.to_string());
            } else {
                out.push_str("nan");
            }
        }
        out.push('\n');
    }
    out
}
