use thiserror::Error;

/// Errors raised by the algebra, torsion, presentation and invariant layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,

    #[error("zero element has no {0}")]
    ZeroInput(&'static str),

    #[error("operation requires a univariate (rank 1) ring, got rank {0}")]
    NotUnivariate(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown field specifier `{0}` (expected Q, Qi or Fp:<prime>)")]
    UnknownField(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("modulus {0} is not a prime below 2^31")]
    BadModulus(u64),

    #[error("runtime modulus already fixed to {current}, cannot switch to {requested}")]
    ModulusConflict { current: u32, requested: u32 },

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("complex is not acyclic and no homology bases were supplied")]
    MissingHomologyBases,

    #[error("invalid homology basis in degree {degree}: {reason}")]
    InvalidHomologyBasis { degree: usize, reason: String },

    #[error("bases are not compatible with the short exact sequence: {0}")]
    IncompatibleBases(String),

    #[error("both factor torsions vanish")]
    BothFactorsZero,

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("relator {index} (`{relator}`) does not map to the identity")]
    RelatorViolation { index: usize, relator: String },

    #[error("abelianization has trivial free part")]
    TrivialFreePart,

    #[error("unknown table entry `{0}` (known: unknot, trefoil, figure8, 5_2, hopf, whitehead)")]
    UnknownKnot(String),

    #[error("expected a deficiency-one presentation ({generators} generators, {relators} relators)")]
    NotDeficiencyOne { generators: usize, relators: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis failure: {0}")]
    Hypothesis(String),

    #[error("representative is not a Laurent polynomial")]
    NotPolynomial,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
