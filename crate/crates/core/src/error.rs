use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator divisible by {0}")]
    DenominatorDivisible(String),
    #[error("matrix is singular")]
    Singular,
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("operation unsupported over {0}")]
    UnsupportedField(String),
    #[error("field is not perfect: {0}")]
    ImperfectField(String),
    #[error("generator {0} is not unipotent")]
    NotUnipotentGenerator(usize),
    #[error("subspace is not invariant under generator {0}")]
    NotInvariant(usize),
    #[error("no admissible modulus below {0}")]
    NoPrimeInRange(u64),
    #[error("modulus rejected: {0}")]
    InvalidModulus(String),
    #[error("closure exceeded cap {0}")]
    CapExceeded(usize),
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("generators do not commute")]
    NotAbelian,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("maximal nilpotent subgroup does not exist: {0}")]
    Nonexistence(String),
    #[error("case r = 2 with q = 3 mod 4 is not supported")]
    UnsupportedTwoCase,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("abelian series depth reached degree {0}")]
    LoopOverflow(usize),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
}

impl Error {
    /// Budget errors mean the computation was abandoned, never that a verdict
    /// was reached.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::CapExceeded(_) | Error::NoPrimeInRange(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
