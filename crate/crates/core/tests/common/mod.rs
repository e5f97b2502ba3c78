#![allow(dead_code)]

use gbf_core::gbf::{
    augmented_laplacian_gbf, diffusion_gbf, laplacian_polynomial_gbf, polydecay_gbf, variational_spline_gbf,
};
use gbf_core::graph::connected_random_geometric;
use gbf_core::{generate_graph, DMatrix, DVector, Gbf, Graph, GraphKind, SamplingSet, Signal, Spectrum};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Cyclic Jacobi rotations; independent of the library eigensolver.
pub fn jacobi_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut m = a.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off < 1e-30 * (1.0 + m.norm_squared()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

pub fn spectrum_of(kind: GraphKind) -> Spectrum {
    Spectrum::of_graph(&generate_graph(&kind).unwrap().graph).unwrap()
}

/// A connected graph of `n` nodes drawn from several families.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    match rng.random_range(0..4) {
        0 => generate_graph(&GraphKind::Path { n }).unwrap().graph,
        1 => generate_graph(&GraphKind::Cycle { n: n.max(3) }).unwrap().graph,
        2 => {
            let rows = (2..=n).find(|r| n.is_multiple_of(*r) && r * r >= n).unwrap_or(n);
            generate_graph(&GraphKind::Grid { rows, cols: n / rows }).unwrap().graph
        }
        _ => {
            let radius = (2.5 * (n as f64).ln() / (std::f64::consts::PI * n as f64))
                .sqrt()
                .min(0.9);
            connected_random_geometric(n, radius, rng.random(), 500).unwrap().0
        }
    }
}

/// A positive definite catalog GBF with random parameters.
pub fn random_pd_gbf(rng: &mut ChaCha8Rng, s: &Spectrum) -> Gbf {
    match rng.random_range(0..5) {
        0 => diffusion_gbf(s, rng.random_range(0.1..4.0)).unwrap(),
        1 => variational_spline_gbf(s, rng.random_range(0.05..1.0), rng.random_range(0.5..3.0)).unwrap(),
        2 => polydecay_gbf(s, rng.random_range(0.5..2.5)).unwrap(),
        3 => augmented_laplacian_gbf(s, rng.random_range(0.1..2.0)).unwrap(),
        _ => laplacian_polynomial_gbf(
            s,
            &[
                rng.random_range(0.2..1.0),
                rng.random_range(0.0..1.0),
                rng.random_range(0.0..1.0),
            ],
        )
        .unwrap(),
    }
}

pub fn random_sampling(rng: &mut ChaCha8Rng, n: usize, count: usize) -> SamplingSet {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(count);
    SamplingSet::new(idx, n).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

pub fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Signal {
    Signal(random_vector(rng, n))
}

/// Dense kernel by explicit sum of rank-one terms `f_k u_k u_k^T`.
pub fn kernel_by_outer_products(s: &Spectrum, coeffs: &DVector<f64>) -> DMatrix<f64> {
    let n = s.len();
    let mut k = DMatrix::zeros(n, n);
    for j in 0..n {
        let u = s.fourier().column(j);
        k += u * u.transpose() * coeffs[j];
    }
    k
}
