use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed cycle notation in '{text}': {reason}")]
    MalformedCycle { text: String, reason: String },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {point} appears twice in one permutation")]
    DuplicatePoint { point: usize },

    #[error("group file line {line}: {reason}")]
    MalformedGroupFile { line: usize, reason: String },

    #[error("group too large for dense enumeration: order {order} exceeds cap {cap}")]
    GroupTooLarge { order: String, cap: usize },

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("galois exponent {j} is not coprime to conductor {n}")]
    NotCoprime { j: i64, n: u32 },

    #[error("malformed cyclotomic expression '{text}': {reason}")]
    MalformedExpression { text: String, reason: String },

    #[error("exponent {exp} must be below conductor {n}")]
    ExponentTooLarge { exp: u64, n: u32 },

    #[error("{0} is not an admissible prime: {1}")]
    InvalidPrime(u64, &'static str),

    #[error("no prime found below search cap {0}")]
    NoPrimeFound(u64),

    #[error("BDS split incomplete: {0} subspace(s) of dimension > 1 remain")]
    SplitIncomplete(usize),

    #[error("lift verification failed: {0}")]
    LiftVerification(String),

    #[error("table not Galois-closed: row {row} under exponent {j}")]
    NotGaloisClosed { row: usize, j: u32 },

    #[error("Siegel violation: {0}")]
    SiegelViolation(String),

    #[error("Cassels violation: {0}")]
    CasselsViolation(String),

    #[error("sign of a real cyclotomic number undetermined at {0} bits")]
    SignUndetermined(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
