use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrimeP(u32),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomial has no root in the extension field")]
    NoRootInExtension,
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("cannot invert zero (known only to O(u^{0}))")]
    InvertZero(i64),
    #[error("series operands have different field specs")]
    SpecMismatch,
    #[error("result has no representable term")]
    EmptyPrecision,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("z lies on the lattice A to working precision")]
    ZAtLattice,
    #[error("|alpha| is outside the convergence disk of the deformed logarithm")]
    AlphaTooLarge,
    #[error("pole at a lattice point")]
    PoleAtLatticePoint,
    #[error("root does not annihilate the prime")]
    RootMismatch,
    #[error("element is not coprime to the prime")]
    NotCoprime,
    #[error("element is not invertible: {0}")]
    NonInvertible(String),
    #[error("duplicate interpolation nodes")]
    DuplicateNodes,
    #[error("singular interpolation system")]
    SingularSystem,
    #[error("zeta is a root of a Carlitz product denominator")]
    ZetaRootOfDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
