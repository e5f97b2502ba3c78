//! Positive definite graph basis functions: spectral calculus on graphs,
//! kernel interpolation, norming sets, error and stability bounds,
//! windowed Fourier frames and quadrature.

pub mod analysis;
pub mod descriptor;
pub mod error;
pub mod experiment;
pub mod gbf;
pub mod graph;
pub mod interp;
pub mod io;
pub mod linalg;
pub mod quadrature;
pub mod spacefreq;
pub mod spectral;

pub use analysis::{
    check_decay_hypothesis, condition_report, decay_error_bound, error_bound, norming_check, sampling_projection,
    ConditionReport, DecayHypothesis, ErrorBound, NormingReport,
};
pub use descriptor::{Bandwidth, GbfSpec};
pub use error::{GbfError, Result};
pub use gbf::{
    augment_cpd, classify, convolution_square_root, hankel_moment_matrix, kernel_matrix, moment_pd_check,
    Classification, Definiteness, Gbf, KernelMatrix,
};
pub use graph::{generate_graph, Graph, GraphKind};
pub use interp::{
    bandlimited_least_squares, interpolate, kernel_submatrix, lagrange_basis, native_inner, native_norm,
    power_function, Interpolant, SamplingSet,
};
pub use quadrature::{quadrature_apply, quadrature_error_bound, quadrature_weights, QuadratureRule};
pub use spacefreq::{frame_bounds, windowed_fourier, FrameBounds, FrequencySet};
pub use spectral::{Signal, SpectralVector, Spectrum};

pub use nalgebra::{DMatrix, DVector};
