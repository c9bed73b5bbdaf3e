use thiserror::Error;

/// Errors from the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("polynomials over different variable sets: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("integration bound depends on the integration variable {0}")]
    BoundDependsOnVariable(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("degenerate Gram matrix: pairing is not nondegenerate")]
    DegeneratePairing,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("subspace dimension mismatch: ambient {expected} vs {got}")]
    AmbientMismatch { expected: usize, got: usize },
}

/// Errors from the geometric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcError {
    #[error(transparent)]
    Core(#[from] CoreError),
    /// A defining identity of a GC structure fails; `identity` names it
    /// (`square`, `pairing`, `reality`, `blocks`).
    #[error("constraint `{identity}` violated: {detail}")]
    Constraint { identity: &'static str, detail: String },
    #[error("subspace is not isotropic for the pairing")]
    NotIsotropic,
    #[error("L ∩ conj(L) ≠ 0")]
    NotTransverse,
    #[error("expected dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("B-field must be real and skew-symmetric")]
    NotSkew,
    #[error("splitting precondition failed: {0}")]
    Splitting(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("Lie algebra check failed: {0}")]
    LieAlgebra(String),
}

pub type Result<T, E = GcError> = std::result::Result<T, E>;
