use thiserror::Error;

/// Errors raised by graph construction, spectral operations, interpolation
/// and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GbfError {
    #[error("edge ({i}, {j}) has non-positive weight {weight}")]
    NonPositiveWeight { i: usize, j: usize, weight: f64 },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("node {node} is isolated (degree 0)")]
    IsolatedNode { node: usize },
    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bandwidth {m} out of range 1..={n}")]
    BandwidthOutOfRange { m: usize, n: usize },
    #[error("signal is not in the subalgebra generated by the Laplacian")]
    NotInSubalgebra,
    #[error("delta {delta} too small, must exceed {required}")]
    DeltaTooSmall { delta: f64, required: f64 },
    #[error("function is not positive semi-definite (min coefficient {min_coeff:e})")]
    NotPsd { min_coeff: f64 },
    #[error("basis function is not positive definite ({classification}); augment it first")]
    NotPd { classification: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid decay rate: {0}")]
    InvalidRate(String),
    #[error("coefficient {k} violates the decay hypothesis")]
    DecayHypothesisViolated { k: usize },
    #[error(
        "kernel system is ill-conditioned: pivot {pivot:e} below {threshold:e} \
         (condition estimate {condition_estimate:e})"
    )]
    IllConditioned {
        pivot: f64,
        threshold: f64,
        condition_estimate: f64,
    },
    #[error("sampling set is not norming for bandwidth {m} (rho = {rho})")]
    NotNorming { m: usize, rho: f64 },
    #[error("first eigenvector is not constant")]
    FirstEigenvectorNotConstant,
    #[error("invalid sampling set: {0}")]
    InvalidSampling(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("descriptor error at position {position}: expected {expected}")]
    Descriptor { position: usize, expected: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl GbfError {
    /// True for failures of the numerical method itself, as opposed to bad
    /// input or configuration.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            GbfError::NotPd { .. }
                | GbfError::NotPsd { .. }
                | GbfError::IllConditioned { .. }
                | GbfError::NotNorming { .. }
                | GbfError::NotSymmetric { .. }
                | GbfError::IsolatedNode { .. }
                | GbfError::FirstEigenvectorNotConstant
                | GbfError::NotInSubalgebra
                | GbfError::DeltaTooSmall { .. }
                | GbfError::DecayHypothesisViolated { .. }
        )
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            GbfError::NonPositiveWeight { .. } => "NonPositiveWeight",
            GbfError::SelfLoop { .. } => "SelfLoop",
            GbfError::DuplicateEdge { .. } => "DuplicateEdge",
            GbfError::IsolatedNode { .. } => "IsolatedNode",
            GbfError::IndexOutOfRange { .. } => "IndexOutOfRange",
            GbfError::NotSymmetric { .. } => "NotSymmetric",
            GbfError::DimensionMismatch { .. } => "DimensionMismatch",
            GbfError::BandwidthOutOfRange { .. } => "BandwidthOutOfRange",
            GbfError::NotInSubalgebra => "NotInSubalgebra",
            GbfError::DeltaTooSmall { .. } => "DeltaTooSmall",
            GbfError::NotPsd { .. } => "NotPSD",
            GbfError::NotPd { .. } => "NotPD",
            GbfError::InvalidParam(_) => "InvalidParam",
            GbfError::InvalidRate(_) => "InvalidRate",
            GbfError::DecayHypothesisViolated { .. } => "DecayHypothesisViolated",
            GbfError::IllConditioned { .. } => "IllConditioned",
            GbfError::NotNorming { .. } => "NotNorming",
            GbfError::FirstEigenvectorNotConstant => "FirstEigenvectorNotConstant",
            GbfError::InvalidSampling(_) => "InvalidSampling",
            GbfError::Parse { .. } => "Parse",
            GbfError::Descriptor { .. } => "Descriptor",
            GbfError::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for GbfError {
    fn from(e: std::io::Error) -> Self {
        GbfError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GbfError>;
