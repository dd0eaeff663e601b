use thiserror::Error;

/// Crate-wide error type. Variants are shared by all modules so failure
/// modes compose across the tower/series/pairing layers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("p = 2 is not supported")]
    UnsupportedEvenPrime,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by a zero divisor")]
    DivisionByZeroDivisor,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("window overflow at exponent {0}")]
    WindowOverflow(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("substitution diverges within the degree cap: {0}")]
    DivergentSubstitution(String),
    #[error("independent constructions disagree: {0}")]
    ConstructionMismatch(String),
    #[error("uniformizer mismatch between formal groups")]
    UniformizerMismatch,
    #[error("not a principal unit")]
    NotPrincipalUnit,
    #[error("sigma-twisted solve failed: {0}")]
    TwistSolveFailure(String),
    #[error("polynomial is not Eisenstein: {0}")]
    NotEisenstein(String),
    #[error("degree cap too small: {0}")]
    DegreeCapTooSmall(String),
    #[error("element is indistinguishable from zero at current precision")]
    IndistinguishableFromZero,
    #[error("target level {target} below source level {source}")]
    LevelOrder { source: usize, target: usize },
    #[error("residue is not a unit")]
    NonUnitResidue,
    #[error("zero residue has no Teichmueller lift")]
    ZeroResidue,
    #[error("not a torsion point at the requested level")]
    NotATorsionPoint,
    #[error("element is not monomial-decomposable: {0}")]
    NotDecomposable(String),
    #[error("outside the convergence domain: {0}")]
    OutsideConvergenceDomain(String),
    #[error("(k, t) = ({0}, {1}) is not an admissible pair")]
    NotAdmissiblePair(usize, usize),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("descent level {s} too small, need at least {min}")]
    DescentLevelTooSmall { s: usize, min: usize },
    #[error("oracle inapplicable: {0}")]
    OracleInapplicable(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
