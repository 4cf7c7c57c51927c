use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime power (supported: 2 <= q <= 16)")]
    NotAPrimePower(u32),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u8),

    #[error("element {value} is not a valid encoding in GF({q})")]
    InvalidElement { q: u8, value: u8 },

    #[error("ambient mismatch: GF({q1})^{d1} vs GF({q2})^{d2}")]
    AmbientMismatch { q1: u8, d1: usize, q2: u8, d2: usize },

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "dense adjacency needs {needed} bytes but the memory budget is {budget} bytes; use streaming mode"
    )]
    MemoryBudgetExceeded { needed: u128, budget: u64 },

    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("duplicate vertex index {0}")]
    DuplicateIndex(usize),

    #[error("construction anchors violate the required incidence: {0}")]
    SpecIncidenceViolation(String),

    #[error("family is not a coclique: vertices {0} and {1} are opposite")]
    NotACoclique(usize, usize),

    #[error("family is not a maximal coclique: vertex {0} can be added")]
    NotMaximal(usize),

    #[error("expected a subspace of vector dimension {expected}, got {got}")]
    WrongDimension { expected: String, got: usize },

    #[error("space {space} lies in {count} member flags, which is not of the form [k 1]_q")]
    NonMaximalWeightSpectrum { space: String, count: usize },

    #[error("members {0} and {1} do not intersect")]
    NotIntersecting(usize, usize),

    #[error("members have mixed dimensions")]
    MixedDimensions,

    #[error("members {0} and {1} are not skew")]
    NotPairwiseSkew(usize, usize),

    #[error("expected {expected} subspaces, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("space {0} does not occur in any flag of the family")]
    SpaceNotInFamily(String),

    #[error("view has {0} vertices; exact search is limited to {1}")]
    ViewTooLarge(usize, usize),

    #[error("f(n,q) is undefined for n={n}, q={q}")]
    UndefinedBranch { n: usize, q: u64 },

    #[error("vertex hash mismatch: family was built for {expected}, geometry has {got}")]
    VertexHashMismatch { expected: String, got: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
