use thiserror::Error;

/// Errors raised by index-set construction, Dicke algebra, witnesses and the dense oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DickeError {
    #[error("local dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected} entries, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subset norm {m} exceeds bound norm {bound_norm}")]
    NormExceedsBound { m: usize, bound_norm: usize },

    #[error("{part} is not elementwise bounded by {parent}")]
    NotBounded { part: String, parent: String },

    #[error("subsystem size {m} outside [{min}, {max}]")]
    SubsystemOutOfRange { m: usize, min: usize, max: usize },

    #[error("split size {k} outside [1, {max}]")]
    SplitOutOfRange { k: usize, max: usize },

    #[error("excitation count {e} exceeds particle number {n}")]
    ExcitationsExceedParticles { e: usize, n: usize },

    #[error("at least 2 particles required, got {n}")]
    TooFewParticles { n: usize },

    #[error("occupation {0} has a single nonzero entry; the state is fully separable")]
    FullySeparable(String),

    #[error("invalid witness choice: {0}")]
    InvalidWitness(String),

    #[error("shift vector is not of the form e_i - e_j")]
    NonCanonicalShift,

    #[error("dense dimension {dim} exceeds limit {limit}")]
    DenseLimitExceeded { dim: usize, limit: usize },

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("eigenvalue computation did not converge")]
    EigenFailure,
}

pub type Result<T> = std::result::Result<T, DickeError>;
