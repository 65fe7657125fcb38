use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("residue modulus must be at least 2, got {0}")]
    ModulusTooSmall(i64),
    #[error("quotient by an improper ideal or submodule")]
    ImproperQuotient,
    #[error("{what} exceeds cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("element index {0} does not belong to this structure")]
    ForeignElement(usize),
    #[error("operands live over different rings")]
    MismatchedRings,
    #[error("operands live in different modules")]
    MismatchedModules,
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
    #[error("module law violated: {0}")]
    ActionLaw(String),
    #[error("module is not a multiplication module")]
    NotMultiplication,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("generator images do not define a homomorphism: {0}")]
    NotWellDefined(String),
    #[error("subset is not multiplicatively closed or misses 1")]
    NotMultiplicativelyClosed,
    #[error("I·M is not contained in N")]
    NotHomogeneous,
    #[error("members do not cover the target submodule")]
    NotCovering,
    #[error("invalid covering: {0}")]
    InvalidCovering(String),
    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,
    #[error("ambient rank {0} outside supported range 1..=4")]
    RankOutOfRange(usize),
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry {0} exceeds the 2^31 bound")]
    EntryTooLarge(i128),
    #[error("ideal is improper")]
    Improper,
    #[error("operation requires a finite base ring, not the integers")]
    IntegerBase,
    #[error("law {law} expects {expected} instances")]
    KindMismatch { law: String, expected: &'static str },
    #[error("unknown law id {0}")]
    UnknownLaw(String),
    #[error("unknown corpus {0}")]
    UnknownCorpus(String),
    #[error("no element named {0}")]
    UnknownElement(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("no submodule or ideal named {0}")]
    UnknownTarget(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Resource-cap failures map to their own CLI exit code.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Overflow | Error::EntryTooLarge(_))
    }
}
