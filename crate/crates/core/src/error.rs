use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("frequency multipliers must be positive (got l1 = {l1}, l2 = {l2})")]
    NonPositiveMultiplier { l1: i64, l2: i64 },
    #[error("kappa = {0} lies outside the open interval (-1/4, 3/4)")]
    KappaOutOfRange(String),
    #[error("anisotropic systems take no kappa")]
    UnexpectedKappa,
    #[error("the deformed system requires a kappa value")]
    MissingKappa,
    #[error("scalars belong to different quadratic fields")]
    ContextMismatch,
    #[error("factors {0} and {1} are parallel in (m, E)")]
    DegenerateFactorPair(usize, usize),
    #[error("no factor pair produced an admissible energy family")]
    NoFamilies,
    #[error("operation not supported for this system: {0}")]
    UnsupportedSystem(&'static str),
    #[error("basis dimension {dim} exceeds the cap {cap}")]
    SizeOverflow { dim: usize, cap: usize },
    #[error("invalid basis cutoffs ({0}, {1}); both must be at least 1")]
    InvalidBasis(usize, usize),
    #[error("interior mask is empty")]
    EmptyMask,
    #[error("operator dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("grid has {0} points; at least 64 are required")]
    GridTooCoarse(usize),
    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
