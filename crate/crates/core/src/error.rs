use thiserror::Error;

/// Crate-wide error type.
///
/// Variants split into three rough classes, which the CLI maps to exit codes:
/// bad inputs or domain violations, numeric-backend ambiguity, and internal
/// invariant failures (budget exhaustion, certification failure).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("could not parse {0:?} as an exact rational")]
    Parse(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("bracket [{0}, {1}] does not straddle a sign change of the polynomial")]
    NotBracketed(String, String),
    #[error("bracket may contain more than one root (sign variation count {0})")]
    MultipleRoots(usize),
    #[error("isolated root is not > 1")]
    RootNotGreaterThanOne,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("sign refinement budget exhausted after {0} bisections")]
    SignBudget(usize),
    #[error("point {0} outside the domain of the transformation")]
    OutOfDomain(String),
    #[error("floor/sign not decidable at current numeric precision: {0}")]
    NumericAmbiguous(String),
    #[error("letter {0} outside the morphism alphabet {{1, 2}}")]
    BadAlphabet(u32),
    #[error("index {0} exceeds the supported range (cap {1})")]
    UnboundedIndex(u64, u64),
    #[error("interval piece count {0} exceeded the explosion guard {1}")]
    ExplosionGuard(usize, usize),
    #[error("expected interval of positive length, got {0}")]
    DegenerateInterval(String),
    #[error("gap/support pieces do not tile (0,1]: {0}")]
    PartitionBreak(String),
    #[error("iterated images failed to cover the support within {0} steps")]
    NoCoverage(usize),
    #[error("iteration failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("image of atom {0} is not a union of partition atoms")]
    AtomImageMisaligned(String),
    #[error("no conjugate of modulus > 1: growth certificate unavailable")]
    NotExpanding,
    #[error("certificate threshold not reached within {0} orbit steps")]
    NoCertificate(usize),
    #[error("transition matrix is not primitive")]
    NotPrimitive,
    #[error("exact eigenvector identity fails at atom {0}")]
    EigenMismatch(usize),
    #[error("could not certify complex root isolation: {0}")]
    IsolationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
