use thiserror::Error;

use crate::lattice::ModelKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {value} is out of range (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        allowed: String,
    },

    #[error("classes live in different lattices: {left} vs {right}")]
    BasisMismatch { left: ModelKind, right: ModelKind },

    #[error("class has {got} coefficients but {kind} has rank {rank}")]
    WrongLength {
        kind: ModelKind,
        got: usize,
        rank: usize,
    },

    #[error("no basis dictionary relates {from} and {to}")]
    UnrelatedModels { from: ModelKind, to: ModelKind },

    #[error("{kind} has no {class} class")]
    MissingClass { kind: ModelKind, class: &'static str },

    #[error("reflection requires a (-2)-class, got self-intersection {self_pairing}")]
    NotARoot { self_pairing: String },

    #[error("enumeration is unbounded: {0}")]
    EnumerationUnbounded(String),

    #[error("enumeration produced more than {cap} solutions")]
    EnumerationCapExceeded { cap: usize },

    #[error("orbit exceeded the cap of {cap} elements")]
    OrbitCapExceeded { cap: usize },

    #[error("D^2 - D.K is odd for D = {class}; the Gram matrix is not even on K")]
    ParityViolation { class: String },

    #[error("no polarization is positive on every effective generator (cone is not pointed)")]
    NonPointedCone,

    #[error("effectivity search exceeded {budget} nodes; status indeterminate")]
    Indeterminate { budget: usize },

    #[error("class {class} is outside the supported Ext regime: {reason}")]
    OutOfRegime { class: String, reason: String },

    #[error("representation {rep} is not available on {kind}")]
    RepModelMismatch { rep: &'static str, kind: ModelKind },

    #[error("summand {class} has boundary degree {degree}; twist to degree zero first")]
    NonzeroBoundaryDegree { class: String, degree: String },

    #[error("line l_{0} carries no boundary marking")]
    UnmarkedLine(usize),

    #[error("summand {class} is not a combination of marked lines")]
    UnmarkableClass { class: String },

    #[error("extension block {group} spans distinct boundary points")]
    SplitBlock { group: u32 },

    #[error("elliptic-curve group orders disagree: {left} vs {right}")]
    GroupMismatch { left: u64, right: u64 },

    #[error("cover is not reduced: the discriminant vanishes identically")]
    NonReducedCover,

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("inconsistent degree data: {0}")]
    InconsistentDegrees(String),

    #[error("fiber lattice decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("collision block needs the collision (l_{i}, l_{j}) in the surface configuration")]
    MissingCollision { i: usize, j: usize },

    #[error("invalid spectral datum: {0}")]
    InvalidDatum(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "out_of_range",
            Error::BasisMismatch { .. } => "basis_mismatch",
            Error::WrongLength { .. } => "wrong_length",
            Error::UnrelatedModels { .. } => "unrelated_models",
            Error::MissingClass { .. } => "missing_class",
            Error::NotARoot { .. } => "not_a_root",
            Error::EnumerationUnbounded(_) => "enumeration_unbounded",
            Error::EnumerationCapExceeded { .. } => "enumeration_cap_exceeded",
            Error::OrbitCapExceeded { .. } => "orbit_cap_exceeded",
            Error::ParityViolation { .. } => "parity_violation",
            Error::NonPointedCone => "non_pointed_cone",
            Error::Indeterminate { .. } => "indeterminate",
            Error::OutOfRegime { .. } => "out_of_regime",
            Error::RepModelMismatch { .. } => "rep_model_mismatch",
            Error::NonzeroBoundaryDegree { .. } => "nonzero_boundary_degree",
            Error::UnmarkedLine(_) => "unmarked_line",
            Error::UnmarkableClass { .. } => "unmarkable_class",
            Error::SplitBlock { .. } => "split_block",
            Error::GroupMismatch { .. } => "group_mismatch",
            Error::NonReducedCover => "non_reduced_cover",
            Error::InvalidCover(_) => "invalid_cover",
            Error::InconsistentDegrees(_) => "inconsistent_degrees",
            Error::DecompositionFailed(_) => "decomposition_failed",
            Error::MissingCollision { .. } => "missing_collision",
            Error::InvalidDatum(_) => "invalid_datum",
            Error::InvalidRing(_) => "invalid_ring",
            Error::InvalidClass(_) => "invalid_class",
            Error::InvalidPolynomial(_) => "invalid_polynomial",
            Error::Parse { .. } => "parse",
            Error::Schema { .. } => "schema",
            Error::Io(_) => "io",
        }
    }
}
